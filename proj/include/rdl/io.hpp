// Copyright 2026 The rdl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON formats.
//
//   operator  {"labels": [..], "dims": [..], "re": [[..]], "im": [[..]]}
//   spec      {"labels": [..], "dims": [..]}
//   channel   {"in": spec, "out": spec, "kraus": [{"re": .., "im": ..}, ..]}
//   instance  {"rho": operator, "channel": channel}
//          or {"tau": operator, "a_prime": [..], "a": [..]}
//          or {"weights": [..], "pairs": [{"rho": .., "channel": ..}, ..]}
//   coding    {"channel": channel, "sigma": operator, "Q_bits": x, "E_bits": y}
//
// Matrices are row-major. "im" may be omitted for real matrices. Kraus
// entries are rectangular (d_out rows, d_in columns) and carry no labels.
// Every parse failure throws ValidationError naming the offending field.

#ifndef RDL_IO_HPP
#define RDL_IO_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "rdl/channels.hpp"
#include "rdl/coding.hpp"
#include "rdl/decoupling.hpp"
#include "rdl/tensor.hpp"

namespace rdl {

using Json = nlohmann::json;

// Reads and parses a file; syntax errors report line and column.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& source);

Json spec_to_json(const SystemSpec& spec);
SystemSpec spec_from_json(const Json& j, const std::string& where);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& where);

Json op_to_json(const Op& op);
Op op_from_json(const Json& j, const std::string& where);
DensityOp density_from_json(const Json& j, const std::string& where);

Json channel_to_json(const Channel& ch);
Channel channel_from_json(const Json& j, const std::string& where);

// Exactly one member is set.
struct InstanceInput {
  std::optional<DecouplingInstance> pair;
  std::optional<Ensemble> ensemble;
  std::optional<JointInstance> joint;
};
InstanceInput instance_from_json(const Json& j, const std::string& where);
Json instance_to_json(const DecouplingInstance& inst);

struct CodingTask {
  Channel channel;
  DensityOp sigma;
  CodeParams params;
};
CodingTask coding_task_from_json(const Json& j, const std::string& where);

}  // namespace rdl

#endif  // RDL_IO_HPP
