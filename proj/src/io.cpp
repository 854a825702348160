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

#include "rdl/io.hpp"

#include <fstream>
#include <sstream>

namespace rdl {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + ": missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ValidationError(where + ": expected a number");
  return j.get<double>();
}

Labels labels_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of labels");
  Labels out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      throw ValidationError(where + "[" + std::to_string(i) + "]: expected a string");
    }
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

Eigen::MatrixXd real_block(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(where + ": expected a non-empty array of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ValidationError(where + "[0]: expected an array");
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string w = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ValidationError(w + ": expected a row of " + std::to_string(cols) +
                            " numbers");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = number(j[r][c], w + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // The library message carries the line and column.
    throw ValidationError(source + ": malformed JSON: " + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Json spec_to_json(const SystemSpec& spec) {
  return Json{{"labels", spec.labels()}, {"dims", spec.dims()}};
}

SystemSpec spec_from_json(const Json& j, const std::string& where) {
  Labels labels = labels_from_json(field(j, "labels", where), where + ".labels");
  const Json& d = field(j, "dims", where);
  if (!d.is_array()) throw ValidationError(where + ".dims: expected an array");
  std::vector<int> dims;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!d[i].is_number_integer()) {
      throw ValidationError(where + ".dims[" + std::to_string(i) +
                            "]: expected an integer");
    }
    dims.push_back(d[i].get<int>());
  }
  try {
    return SystemSpec(labels, dims);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  Eigen::MatrixXd re = real_block(field(j, "re", where), where + ".re");
  Matrix m = re.cast<Complex>();
  if (j.contains("im")) {
    Eigen::MatrixXd im = real_block(j["im"], where + ".im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) {
      throw ValidationError(where + ": 're' and 'im' differ in shape");
    }
    m += Complex(0.0, 1.0) * im.cast<Complex>();
  }
  return m;
}

Json op_to_json(const Op& op) {
  Json j = spec_to_json(op.spec);
  Json m = matrix_to_json(op.matrix);
  j["re"] = std::move(m["re"]);
  j["im"] = std::move(m["im"]);
  return j;
}

Op op_from_json(const Json& j, const std::string& where) {
  SystemSpec spec = spec_from_json(j, where);
  Matrix m = matrix_from_json(j, where);
  try {
    return Op(spec, std::move(m));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

DensityOp density_from_json(const Json& j, const std::string& where) {
  Op op = op_from_json(j, where);
  try {
    return DensityOp(std::move(op));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

Json channel_to_json(const Channel& ch) {
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"in", spec_to_json(ch.in_spec())},
              {"out", spec_to_json(ch.out_spec())},
              {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const Json& j, const std::string& where) {
  SystemSpec in = spec_from_json(field(j, "in", where), where + ".in");
  SystemSpec out = spec_from_json(field(j, "out", where), where + ".out");
  const Json& ks = field(j, "kraus", where);
  if (!ks.is_array()) throw ValidationError(where + ".kraus: expected an array");
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    kraus.push_back(matrix_from_json(ks[i], where + ".kraus[" + std::to_string(i) + "]"));
  }
  try {
    return Channel(std::move(kraus), in, out);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

namespace {

DecouplingInstance pair_from_json(const Json& j, const std::string& where) {
  DensityOp rho = density_from_json(field(j, "rho", where), where + ".rho");
  Channel ch = channel_from_json(field(j, "channel", where), where + ".channel");
  try {
    return DecouplingInstance(std::move(rho), std::move(ch));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

InstanceInput instance_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
  InstanceInput out;
  if (j.contains("rho")) {
    out.pair = pair_from_json(j, where);
  } else if (j.contains("tau")) {
    DensityOp tau = density_from_json(j["tau"], where + ".tau");
    const auto& labels = tau.spec().labels();
    Labels a_prime, a;
    if (j.contains("a_prime")) {
      a_prime = labels_from_json(j["a_prime"], where + ".a_prime");
    } else if (!labels.empty()) {
      a_prime = {labels[0]};
    }
    if (j.contains("a")) {
      a = labels_from_json(j["a"], where + ".a");
    } else if (labels.size() > 1) {
      a = {labels[1]};
    }
    try {
      out.joint = JointInstance(std::move(tau), a_prime, a);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  } else if (j.contains("pairs")) {
    Ensemble ens;
    const Json& w = field(j, "weights", where);
    if (!w.is_array()) throw ValidationError(where + ".weights: expected an array");
    for (std::size_t i = 0; i < w.size(); ++i) {
      ens.weights.push_back(number(w[i], where + ".weights[" + std::to_string(i) + "]"));
    }
    const Json& ps = j["pairs"];
    if (!ps.is_array()) throw ValidationError(where + ".pairs: expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      ens.pairs.push_back(pair_from_json(ps[i], where + ".pairs[" + std::to_string(i) + "]"));
    }
    try {
      validate_ensemble(ens);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    out.ensemble = std::move(ens);
  } else {
    throw ValidationError(where + ": expected one of 'rho', 'tau' or 'pairs'");
  }
  return out;
}

Json instance_to_json(const DecouplingInstance& inst) {
  return Json{{"rho", op_to_json(inst.rho().op())},
              {"channel", channel_to_json(inst.channel())}};
}

CodingTask coding_task_from_json(const Json& j, const std::string& where) {
  Channel ch = channel_from_json(field(j, "channel", where), where + ".channel");
  DensityOp sigma = density_from_json(field(j, "sigma", where), where + ".sigma");
  CodeParams p;
  p.q_bits = number(field(j, "Q_bits", where), where + ".Q_bits");
  p.e_bits = number(field(j, "E_bits", where), where + ".E_bits");
  if (p.q_bits < 0.0 || p.e_bits < 0.0) {
    throw ValidationError(where + ": Q_bits and E_bits must be >= 0");
  }
  return {std::move(ch), std::move(sigma), p};
}

}  // namespace rdl
