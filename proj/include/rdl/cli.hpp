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

#ifndef RDL_CLI_HPP
#define RDL_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rdl/io.hpp"

namespace rdl {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitNumerical = 3 };

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<double> alpha;
  std::string alpha_grid;  // "lo:hi:n" or "a,b,c"; empty for the default
  long samples = 10000;
  std::uint64_t seed = 1;
  std::string seed_source = "default";
  int streams = 1;
  int threads = 1;
  std::string output;
  std::string csv;
  std::string units = "nats";
  std::string cond;  // comma-separated labels
  int dim = 2;
  int r_points = 500;
};

// Parses "lo:hi:n" or a comma-separated list.
std::vector<double> parse_alpha_grid(const std::string& text);

// Executes one command and returns the report. Throws ValidationError or
// NumericalError.
Json execute(const RunConfig& cfg);

// Full front end: argument parsing, RDL_SEED override, report and CSV output,
// exit codes. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdl

#endif  // RDL_CLI_HPP
