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

#include "rdl/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rdl/coding.hpp"
#include "rdl/decoupling.hpp"
#include "rdl/entropies.hpp"
#include "rdl/haar.hpp"

namespace rdl {

namespace {

const std::vector<std::string> kCommands = {
    "entropy",     "decouple-bound", "decouple-mc", "decouple-converse",
    "twirl-check", "coding",         "exponents",   "fenchel"};

constexpr double kConverseSweepLo = 0.01;
constexpr double kConverseSweepHi = 0.99;

Labels split_labels(const std::string& s) {
  Labels out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double unit_scale(const RunConfig& cfg) {
  return cfg.units == "bits" ? 1.0 / std::log(2.0) : 1.0;
}

Json config_json(const RunConfig& cfg) {
  Json j{{"command", cfg.command},
         {"input", cfg.input},
         {"alpha_grid", cfg.alpha_grid},
         {"samples", cfg.samples},
         {"seed", cfg.seed},
         {"seed_source", cfg.seed_source},
         {"streams", cfg.streams},
         {"units", cfg.units},
         {"cond", cfg.cond},
         {"dim", cfg.dim},
         {"r_points", cfg.r_points}};
  j["alpha"] = cfg.alpha ? Json(*cfg.alpha) : Json(nullptr);
  return j;
}

Json mc_json(const McEstimate& e) {
  return Json{{"mean", e.mean},
              {"stderr", e.std_error},
              {"n_samples", e.n_samples},
              {"seed", e.seed},
              {"n_streams", e.n_streams}};
}

Json exponent_json(const ExponentReport& r) {
  return Json{{"alpha_star", r.alpha_star},
              {"exponent", r.exponent},
              {"bound", r.bound},
              {"positive", r.positive}};
}

McOptions mc_options(const RunConfig& cfg) {
  if (cfg.samples < 2) throw ValidationError("--samples must be >= 2");
  if (cfg.streams < 1) throw ValidationError("--streams must be >= 1");
  McOptions o;
  o.n_samples = cfg.samples;
  o.seed = cfg.seed;
  o.n_streams = cfg.streams;
  o.n_threads = std::max(1, cfg.threads);
  return o;
}

std::vector<double> grid_or(const RunConfig& cfg, double lo, double hi) {
  return cfg.alpha_grid.empty() ? alpha_grid(lo, hi) : parse_alpha_grid(cfg.alpha_grid);
}

void check_in(double a, double lo, double hi, bool open, const std::string& what) {
  bool ok = open ? (a > lo && a < hi) : (a >= lo && a <= hi);
  if (!ok) {
    std::ostringstream os;
    os << what << " alpha=" << a << " is outside " << (open ? "(" : "[") << lo
       << ", " << hi << (open ? ")" : "]");
    throw ValidationError(os.str());
  }
}

InstanceInput load_instance(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ValidationError("--input is required");
  return instance_from_json(load_json_file(cfg.input), cfg.input);
}

Json sweep_json(const std::vector<std::string>& columns, const Json& rows) {
  return Json{{"columns", columns}, {"rows", rows}};
}

Json cmd_entropy(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ValidationError("--input is required");
  DensityOp rho = density_from_json(load_json_file(cfg.input), cfg.input);
  Labels cond;
  if (cfg.cond.empty()) {
    cond.assign(rho.spec().labels().begin() + 1, rho.spec().labels().end());
  } else {
    cond = split_labels(cfg.cond);
    rho.spec().subset(cond);
  }
  const double s = unit_scale(cfg);
  auto one = [&](double a) {
    check_in(a, 0.5, 1e6, false, "entropy:");
    EntropyResult h = h_cond_sandwiched(rho, cond, a);
    return Json{{"alpha", a},
                {"sandwiched", h.value * s},
                {"petz", h_cond_petz_down(rho, cond, a) * s},
                {"converged", h.converged},
                {"iterations", h.iterations},
                {"status", h.status}};
  };
  Json result;
  result["von_neumann"] = h_cond_vn(rho, cond) * s;
  result["cond"] = cond;
  bool converged = true;
  if (cfg.alpha) {
    result["at_alpha"] = one(*cfg.alpha);
    converged = converged && result["at_alpha"]["converged"].get<bool>();
  }
  Json report{{"result", result}};
  if (!cfg.alpha_grid.empty() || !cfg.csv.empty() || !cfg.alpha) {
    Json rows = Json::array();
    for (double a : grid_or(cfg, 0.5, 2.0)) {
      Json r = one(a);
      converged = converged && r["converged"].get<bool>();
      rows.push_back({a, r["sandwiched"], r["petz"]});
    }
    report["sweep"] = sweep_json({"alpha", "sandwiched", "petz"}, rows);
  }
  report["result"]["converged"] = converged;
  return report;
}

Json cmd_decouple_bound(const RunConfig& cfg) {
  InstanceInput in = load_instance(cfg);
  if (in.ensemble) in.joint = JointInstance::from_ensemble(*in.ensemble);
  const double s = unit_scale(cfg);
  Json result;
  Json rows = Json::array();
  if (in.pair) {
    const auto& inst = *in.pair;
    result["best"] = exponent_json(best_achievability(inst));
    if (cfg.alpha) {
      check_in(*cfg.alpha, 1.0, 2.0, false, "decouple-bound:");
      result["at_alpha"] = {{"alpha", *cfg.alpha},
                            {"entropy_sum", sandwiched_entropy_sum(inst, *cfg.alpha) * s},
                            {"bound", achievability_bound(inst, *cfg.alpha)}};
    }
    result["entropy_sum_vn"] = sandwiched_entropy_sum(inst, 1.0) * s;
    for (double a : grid_or(cfg, 1.0, 2.0)) {
      check_in(a, 1.0, 2.0, false, "decouple-bound:");
      double h = sandwiched_entropy_sum(inst, a);
      rows.push_back({a, (a - 1.0) / a * h, achievability_bound(inst, a)});
    }
  } else {
    const auto& j = *in.joint;
    for (double a : grid_or(cfg, 1.0, 2.0)) {
      check_in(a, 1.0, 2.0, false, "decouple-bound:");
      double h = h_cond_sandwiched(j.tau(), j.ce_labels(), a).value;
      rows.push_back({a, (a - 1.0) / a * h, joint_achievability_bound(j, a)});
    }
    if (cfg.alpha) {
      check_in(*cfg.alpha, 1.0, 2.0, false, "decouple-bound:");
      result["at_alpha"] = {{"alpha", *cfg.alpha},
                            {"bound", joint_achievability_bound(j, *cfg.alpha)}};
    }
    AlphaMax m = sup_over_alpha(
        [&](double a) {
          return (a - 1.0) / a * h_cond_sandwiched(j.tau(), j.ce_labels(), a).value;
        },
        1.0, 2.0);
    result["best"] = {{"alpha_star", m.alpha},
                      {"exponent", m.value},
                      {"bound", joint_achievability_bound(j, m.alpha)},
                      {"positive", m.value > 0.0}};
  }
  return Json{{"result", result},
              {"sweep", sweep_json({"alpha", "exponent", "bound"}, rows)}};
}

Json cmd_decouple_converse(const RunConfig& cfg) {
  InstanceInput in = load_instance(cfg);
  if (in.ensemble) in.joint = JointInstance::from_ensemble(*in.ensemble);
  const double s = unit_scale(cfg);
  Json result;
  Json rows = Json::array();
  if (in.pair) {
    const auto& inst = *in.pair;
    result["best"] = exponent_json(best_converse(inst));
    if (cfg.alpha) {
      check_in(*cfg.alpha, 0.0, 1.0, true, "decouple-converse:");
      result["at_alpha"] = {{"alpha", *cfg.alpha},
                            {"entropy_sum", petz_entropy_sum(inst, *cfg.alpha) * s},
                            {"bound", converse_bound(inst, *cfg.alpha)}};
    }
    for (double a : grid_or(cfg, kConverseSweepLo, kConverseSweepHi)) {
      check_in(a, 0.0, 1.0, true, "decouple-converse:");
      double h = petz_entropy_sum(inst, a);
      rows.push_back({a, (a - 1.0) * h, converse_bound(inst, a)});
    }
  } else {
    const auto& j = *in.joint;
    for (double a : grid_or(cfg, kConverseSweepLo, kConverseSweepHi)) {
      check_in(a, 0.0, 1.0, true, "decouple-converse:");
      double h = h_cond_petz_down(j.tau(), j.ce_labels(), a);
      rows.push_back({a, (a - 1.0) * h, joint_converse_bound(j, a)});
    }
    if (cfg.alpha) {
      check_in(*cfg.alpha, 0.0, 1.0, true, "decouple-converse:");
      result["at_alpha"] = {{"alpha", *cfg.alpha},
                            {"bound", joint_converse_bound(j, *cfg.alpha)}};
    }
  }
  return Json{{"result", result},
              {"sweep", sweep_json({"alpha", "exponent", "bound"}, rows)}};
}

Json cmd_decouple_mc(const RunConfig& cfg) {
  InstanceInput in = load_instance(cfg);
  McOptions opt = mc_options(cfg);
  Json result;
  if (in.pair) {
    result["mc"] = mc_json(mc_decoupling_error(*in.pair, opt));
  } else if (in.ensemble) {
    result["mc"] = mc_json(mc_ensemble_error(*in.ensemble, opt));
  } else {
    throw ValidationError(
        "decouple-mc needs a state-channel pair or an ensemble, not a bare tau");
  }
  return Json{{"result", result}};
}

Json cmd_twirl_check(const RunConfig& cfg) {
  const int d = cfg.dim;
  if (d < 2 || d > 4) throw ValidationError("--dim must lie in [2, 4]");
  McOptions opt = mc_options(cfg);
  Op exact = twirl_two_copy(d);
  Op phi = max_entangled_unnormalized(d);
  const Eigen::Index n = exact.matrix.rows();
  auto f = [&](const Matrix& u) {
    Op x = embed(Op(SystemSpec({"A"}, {d}), u), phi.spec);
    Matrix y = x.matrix * phi.matrix * x.matrix.adjoint();
    Matrix z = tensor(Op(phi.spec, y), Op(SystemSpec({"A~", "A'~"}, {d, d}), y)).matrix;
    Eigen::VectorXd v(2 * n * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        v[2 * (i * n + j)] = z(i, j).real();
        v[2 * (i * n + j) + 1] = z(i, j).imag();
      }
    }
    return v;
  };
  McVectorEstimate est = mc_expectation_vector(f, d, opt);
  double max_diff = 0.0, max_z = 0.0, max_se = 0.0;
  bool pass = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (int part = 0; part < 2; ++part) {
        Eigen::Index k = 2 * (i * n + j) + part;
        double ex = part == 0 ? exact.matrix(i, j).real() : exact.matrix(i, j).imag();
        double diff = std::abs(est.mean[k] - ex);
        double se = est.std_error[k];
        max_diff = std::max(max_diff, diff);
        max_se = std::max(max_se, se);
        if (se > 0.0) max_z = std::max(max_z, diff / se);
        if (diff > 3.0 * se + 1e-12) pass = false;
      }
    }
  }
  Json result{{"dim", d},
              {"entries", 2 * n * n},
              {"max_abs_diff", max_diff},
              {"max_z", max_z},
              {"max_stderr", max_se},
              {"within_3_stderr", pass},
              {"trace_exact", exact.matrix.trace().real()},
              {"n_samples", est.n_samples},
              {"seed", est.seed},
              {"n_streams", est.n_streams}};
  return Json{{"result", result}};
}

Json cmd_coding(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ValidationError("--input is required");
  CodingTask task = coding_task_from_json(load_json_file(cfg.input), cfg.input);
  CodingReport rep = coding_bounds_rates(task.channel, task.sigma, task.params);
  Json result{{"Q_bits", task.params.q_bits},
              {"E_bits", task.params.e_bits},
              {"delta1", rep.delta1},
              {"delta2", rep.delta2},
              {"epsilon_bound", rep.epsilon_bound},
              {"alpha_star", rep.alpha_star},
              {"beta_star", rep.beta_star},
              {"exponent1", rep.exponent1},
              {"exponent2", rep.exponent2},
              {"in_region", rep.in_region}};
  Labels a = task.sigma.spec().without(task.channel.in_spec().labels()).labels();
  auto boundary_probe = region_boundary(task.channel, task.sigma, {0.0});
  const double h_bits =
      von_neumann_entropy(partial_trace(task.sigma, a)) / std::log(2.0);
  Json rows = Json::array();
  std::vector<double> e_grid;
  for (int k = 0; k < 33; ++k) e_grid.push_back(h_bits * k / 32.0);
  for (const auto& [e, q] : region_boundary(task.channel, task.sigma, e_grid)) {
    rows.push_back({e, q});
  }
  result["q_max_at_e0_bits"] = boundary_probe.front().second;
  return Json{{"result", result}, {"sweep", sweep_json({"E_bits", "Q_max_bits"}, rows)}};
}

Json cmd_exponents(const RunConfig& cfg) {
  InstanceInput in = load_instance(cfg);
  if (!in.pair) throw ValidationError("exponents needs a state-channel pair");
  const auto& inst = *in.pair;
  const double r = std::log(static_cast<double>(inst.channel().d_out()));
  Json result{{"achievability", exponent_json(best_achievability(inst))},
              {"converse", exponent_json(best_converse(inst))},
              {"mother_at_log_c", exponent_json(mother_exponent(inst.rho(), inst.a_labels(), r))},
              {"father_at_log_c",
               exponent_json(father_exponent(inst.omega(), inst.a_prime_labels(), r))}};
  Json rows = Json::array();
  for (double a : alpha_grid(1.0, 2.0)) {
    rows.push_back({"achievability", a, (a - 1.0) / a * sandwiched_entropy_sum(inst, a),
                    achievability_bound(inst, a)});
  }
  for (double a : alpha_grid(kConverseSweepLo, kConverseSweepHi)) {
    rows.push_back({"converse", a, (a - 1.0) * petz_entropy_sum(inst, a),
                    converse_bound(inst, a)});
  }
  return Json{{"result", result},
              {"sweep", sweep_json({"kind", "alpha", "exponent", "bound"}, rows)}};
}

Json cmd_fenchel(const RunConfig& cfg) {
  InstanceInput in = load_instance(cfg);
  if (!in.pair) throw ValidationError("fenchel needs a state-channel pair");
  if (cfg.r_points < 1) throw ValidationError("--r-points must be >= 1");
  const auto& inst = *in.pair;
  const double top = std::log(static_cast<double>(inst.d_a()));
  std::vector<double> grid;
  for (int k = 0; k < cfg.r_points; ++k) {
    grid.push_back(cfg.r_points == 1 ? 0.0 : top * k / (cfg.r_points - 1));
  }
  FenchelResult f = fenchel_check(inst, grid);
  return Json{{"result",
               {{"lhs", f.lhs}, {"rhs", f.rhs}, {"gap", f.rhs - f.lhs}, {"r_star", f.r_star}}}};
}

void write_csv(const Json& sweep, std::ostream& os) {
  os << std::setprecision(17);
  const auto& cols = sweep["columns"];
  for (std::size_t i = 0; i < cols.size(); ++i) {
    os << (i ? "," : "") << cols[i].get<std::string>();
  }
  os << "\n";
  for (const auto& row : sweep["rows"]) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      if (row[i].is_string()) {
        os << row[i].get<std::string>();
      } else {
        os << row[i].get<double>();
      }
    }
    os << "\n";
  }
}

}  // namespace

std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> out;
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("--alpha-grid: cannot parse '" + s + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string lo, hi, n;
    if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') ||
        !std::getline(ss, n)) {
      throw ValidationError("--alpha-grid: expected lo:hi:n");
    }
    double a = to_double(lo), b = to_double(hi);
    double count = to_double(n);
    if (count < 2 || count != std::floor(count) || !(a < b)) {
      throw ValidationError("--alpha-grid: need lo < hi and an integer n >= 2");
    }
    return alpha_grid(a, b, static_cast<int>(count));
  }
  for (const auto& item : split_labels(text)) out.push_back(to_double(item));
  if (out.empty()) throw ValidationError("--alpha-grid: empty grid");
  return out;
}

Json execute(const RunConfig& cfg) {
  if (cfg.units != "nats" && cfg.units != "bits") {
    throw ValidationError("--units must be nats or bits");
  }
  Json report;
  if (cfg.command == "entropy") {
    report = cmd_entropy(cfg);
  } else if (cfg.command == "decouple-bound") {
    report = cmd_decouple_bound(cfg);
  } else if (cfg.command == "decouple-mc") {
    report = cmd_decouple_mc(cfg);
  } else if (cfg.command == "decouple-converse") {
    report = cmd_decouple_converse(cfg);
  } else if (cfg.command == "twirl-check") {
    report = cmd_twirl_check(cfg);
  } else if (cfg.command == "coding") {
    report = cmd_coding(cfg);
  } else if (cfg.command == "exponents") {
    report = cmd_exponents(cfg);
  } else if (cfg.command == "fenchel") {
    report = cmd_fenchel(cfg);
  } else {
    throw ValidationError("unknown command '" + cfg.command + "'");
  }
  report["command"] = cfg.command;
  report["config"] = config_json(cfg);
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Decoupling and coding bounds from Renyi entropies", "rdl"};
  app.add_option("command", cfg.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("--input", cfg.input, "Input JSON file");
  app.add_option("--alpha", cfg.alpha, "Renyi order for a single evaluation");
  app.add_option("--alpha-grid", cfg.alpha_grid, "Sweep grid: lo:hi:n or a,b,c");
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count");
  auto* seed_opt = app.add_option("--seed", cfg.seed, "Monte Carlo seed");
  app.add_option("--streams", cfg.streams, "Number of RNG streams");
  app.add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)");
  app.add_option("--output", cfg.output, "Write the JSON report here instead of stdout");
  app.add_option("--csv", cfg.csv, "Write the sweep table as CSV");
  app.add_option("--units", cfg.units, "Entropy units")
      ->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--cond", cfg.cond, "Conditioning labels, comma separated");
  app.add_option("--dim", cfg.dim, "Dimension for twirl-check");
  app.add_option("--r-points", cfg.r_points, "R grid size for fenchel");

  std::vector<const char*> argv{"rdl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  if (seed_opt->count() > 0) cfg.seed_source = "flag";
  if (const char* env = std::getenv("RDL_SEED")) {
    try {
      std::size_t pos = 0;
      std::string s(env);
      cfg.seed = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      cfg.seed_source = "RDL_SEED";
    } catch (const std::exception&) {
      err << "error: RDL_SEED is not an unsigned integer\n";
      return kExitValidation;
    }
  }

  try {
    Json report = execute(cfg);
    const std::string text = report.dump(2) + "\n";
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw ValidationError("cannot write '" + cfg.output + "'");
      f << text;
    }
    if (!cfg.csv.empty()) {
      if (!report.contains("sweep")) {
        throw ValidationError("command '" + cfg.command + "' has no sweep table for --csv");
      }
      std::ofstream f(cfg.csv);
      if (!f) throw ValidationError("cannot write '" + cfg.csv + "'");
      write_csv(report["sweep"], f);
    }
    if (report["result"].contains("converged") &&
        !report["result"]["converged"].get<bool>()) {
      err << "error: entropy optimizer did not converge\n";
      return kExitNumerical;
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Json::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace rdl
