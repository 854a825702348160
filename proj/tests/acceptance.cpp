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

// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Runtime budgets are part of each criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rdl/cli.hpp"
#include "rdl/coding.hpp"
#include "rdl/decoupling.hpp"
#include "rdl/entropies.hpp"
#include "rdl/haar.hpp"

using namespace rdl;

namespace {

const std::string kFixtures = RDL_FIXTURE_DIR;
const double kLn2 = std::log(2.0);

// Collects the first few failure messages of one criterion.
struct Check {
  int failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ < 3) first += (first.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool run_criterion(int id, const std::string& name, double budget_s,
                   const std::function<std::string(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  std::string summary;
  try {
    summary = body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs <= budget_s, "runtime " + fmt(secs) + " s exceeds " + fmt(budget_s) + " s");
  bool ok = c.failures == 0;
  std::printf("%s criterion %d (%s): %s [%.2f s]%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              summary.c_str(), secs, ok ? "" : " -- ", ok ? "" : c.first.c_str());
  std::fflush(stdout);
  return ok;
}

DecouplingInstance random_instance(oracle::Rng& g, int max_a, int max_c, int max_e) {
  std::uniform_int_distribution<int> pick_a(2, max_a), pick_c(1, max_c), pick_e(1, max_e),
      pick_k(1, 3);
  int da = pick_a(g), dc = pick_c(g), de = pick_e(g), nk = pick_k(g);
  if (dc * nk < da) nk = (da + dc - 1) / dc;
  std::uniform_int_distribution<int> pick_rank(1, da * de);
  DensityOp rho = oracle::random_density(SystemSpec({"A", "E"}, {da, de}), g, pick_rank(g));
  return DecouplingInstance(rho, oracle::random_channel(da, dc, nk, g));
}

// H(A'|C)_ω + H(A|E)_ρ from the oracle, independent of the library.
double oracle_vn_sum(const DecouplingInstance& inst) {
  int da = inst.d_a();
  int dc = static_cast<int>(inst.channel().d_out());
  int de = static_cast<int>(inst.rho().dim() / da);
  return oracle::cond_entropy(inst.omega().matrix(), da, dc) +
         oracle::cond_entropy(inst.rho().matrix(), da, de);
}

std::string criterion1(Check& c) {
  oracle::Rng g(101);
  DecouplingInstance id(max_entangled(2, "A", "E"), Channel::identity(2));
  DecouplingInstance dep(max_entangled(2, "A", "E"),
                         Channel::completely_depolarizing(SystemSpec({"A"}, {2}),
                                                          SystemSpec({"C"}, {2})));
  double worst_id = 0.0, worst_dep = 0.0;
  for (int k = 0; k < 50; ++k) {
    Matrix u = oracle::random_unitary(2, g);
    worst_id = std::max(worst_id, std::abs(decoupling_error_at(id, u) - 0.75));
    worst_dep = std::max(worst_dep, std::abs(decoupling_error_at(dep, u)));
  }
  c.expect(worst_id <= 1e-10, "identity deviation " + fmt(worst_id));
  c.expect(worst_dep <= 1e-12, "depolarizing error " + fmt(worst_dep));
  return "max |err-3/4| = " + fmt(worst_id) + ", max depolarizing err = " + fmt(worst_dep);
}

std::string criterion2(Check& c) {
  double worst = 0.0;
  for (auto [da, dc] : {std::pair{4, 2}, std::pair{8, 2}}) {
    DensityOp w = choi_state(Channel::partial_trace(da / dc, dc));
    for (double a : {0.3, 0.5, 0.9}) {
      double dev = std::abs(h_cond_petz_down(w, {"C"}, a) - std::log(double(da) / (dc * dc)));
      worst = std::max(worst, dev);
      c.expect(dev <= 1e-9, "|A|=" + std::to_string(da) + " alpha=" + fmt(a) + " dev " + fmt(dev));
    }
  }
  return "max deviation " + fmt(worst);
}

std::string criterion3(Check& c) {
  const int d = 2;
  Op exact = twirl_two_copy(d);
  Op phi = max_entangled_unnormalized(d);
  const Eigen::Index n = exact.matrix.rows();
  McOptions opt;
  opt.n_samples = 100000;
  opt.seed = 1;
  auto est = mc_expectation_vector(
      [&](const Matrix& u) {
        Matrix ua = oracle::kron(u, Matrix::Identity(d, d));
        Matrix x = ua * phi.matrix * ua.adjoint();
        Matrix z = oracle::kron(x, x);
        Eigen::VectorXd v(2 * n * n);
        for (Eigen::Index i = 0; i < n * n; ++i) {
          v[2 * i] = z.data()[i].real();
          v[2 * i + 1] = z.data()[i].imag();
        }
        return v;
      },
      d, opt);
  double max_diff = 0.0, max_z = 0.0;
  int outside = 0;
  for (Eigen::Index i = 0; i < n * n; ++i) {
    for (int part = 0; part < 2; ++part) {
      double ex = part == 0 ? exact.matrix.data()[i].real() : exact.matrix.data()[i].imag();
      double diff = std::abs(est.mean[2 * i + part] - ex);
      double se = est.std_error[2 * i + part];
      max_diff = std::max(max_diff, diff);
      if (se > 0) max_z = std::max(max_z, diff / se);
      if (diff > 3.0 * se + 1e-12) ++outside;
    }
  }
  c.expect(outside == 0, std::to_string(outside) + " entries beyond 3 stderr");
  c.expect(max_diff <= 5e-3, "max abs diff " + fmt(max_diff));
  return "max |MC-exact| = " + fmt(max_diff) + ", max z = " + fmt(max_z);
}

std::string criterion4(Check& c) {
  oracle::Rng g(104);
  double max_z = 0.0, max_ratio = 0.0;
  int count = 0;
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      Op y(SystemSpec({"A'", "A", "R"}, {d, d, 2}), oracle::random_hermitian(2 * d * d, g));
      Op ydot = y - depolarize_EA(y, "A");
      double exact = exact_theta_second_moment(y, {"A'"}, {"A"});
      McOptions opt;
      opt.n_samples = 10000;
      opt.seed = 1000 + count;
      McEstimate mc = mc_expectation(
          [&](const Matrix& u) { return theta(ydot, {"A'"}, {"A"}, u).matrix.squaredNorm(); }, d,
          opt);
      double z = std::abs(mc.mean - exact) / mc.std_error;
      max_z = std::max(max_z, z);
      c.expect(z <= 4.0, "d=" + std::to_string(d) + " z=" + fmt(z));
      double ratio = exact / y.matrix.squaredNorm();
      max_ratio = std::max(max_ratio, ratio);
      c.expect(ratio <= 4.0 / 3.0 + 1e-12, "second moment exceeds 4/3 |Y|^2");
      ++count;
    }
  }
  return std::to_string(count) + " operators, max z = " + fmt(max_z) +
         ", max exact/|Y|^2 = " + fmt(max_ratio);
}

std::string criterion5(Check& c) {
  oracle::Rng g(105);
  int violations = 0;
  double min_gap_up = 1e9, min_gap_down = 1e9;
  for (int k = 0; k < 100; ++k) {
    DecouplingInstance inst = random_instance(g, 3, 3, 3);
    McOptions opt;
    opt.n_samples = 1000;
    opt.seed = 5000 + k;
    McEstimate mc = mc_decoupling_error(inst, opt);
    ExponentReport up = best_achievability(inst);
    double gap_up = up.bound + 3.0 * mc.std_error - mc.mean;
    min_gap_up = std::min(min_gap_up, gap_up);
    if (gap_up < 0) {
      ++violations;
      c.expect(false, "instance " + std::to_string(k) + " above achievability bound");
    }
    for (double a : {0.3, 0.5, 0.7}) {
      double gap_down = mc.mean + 3.0 * mc.std_error - converse_bound(inst, a);
      min_gap_down = std::min(min_gap_down, gap_down);
      if (gap_down < 0) {
        ++violations;
        c.expect(false, "instance " + std::to_string(k) + " below converse at alpha " + fmt(a));
      }
    }
  }
  return "100 instances, " + std::to_string(violations) + " violations, min slack above " +
         fmt(min_gap_up) + ", below " + fmt(min_gap_down);
}

std::string criterion6(Check& c) {
  oracle::Rng g(106);
  const int n = 30;
  double add_dev = 0.0, mono_dev = 0.0, order_dev = 0.0, dual_dev = 0.0, limit_dev = 0.0,
         concave_max = -1e9;
  for (int k = 0; k < n; ++k) {
    // Additivity on ω_{A'C} ⊗ ρ_{AE}.
    DensityOp w = oracle::random_density(SystemSpec({"A'", "C"}, {2, 2}), g);
    DensityOp r = oracle::random_density(SystemSpec({"A", "E"}, {2, 2}), g, 1 + k % 4);
    DensityOp wr = tensor(w, r);
    for (double a : {0.7, 1.5}) {
      double joint = h_cond_sandwiched(wr, {"C", "E"}, a).value;
      double sep = h_cond_sandwiched(w, {"C"}, a).value + h_cond_sandwiched(r, {"E"}, a).value;
      double jp = h_cond_petz_down(wr, {"C", "E"}, a);
      double sp = h_cond_petz_down(w, {"C"}, a) + h_cond_petz_down(r, {"E"}, a);
      add_dev = std::max({add_dev, std::abs(joint - sep), std::abs(jp - sp)});
    }

    // Monotonicity and ordering.
    DensityOp rho = oracle::random_density(SystemSpec({"A", "B"}, {2, 1 + 1 + k % 2}), g,
                                           1 + k % 3);
    double prev_s = 1e9, prev_p = 1e9;
    for (double a : {0.6, 0.8, 1.2, 1.5, 2.0}) {
      double hs = h_cond_sandwiched(rho, {"B"}, a).value;
      double hp = h_cond_petz_down(rho, {"B"}, a);
      mono_dev = std::max({mono_dev, hs - prev_s, hp - prev_p});
      order_dev = std::max(order_dev, hp - hs);
      prev_s = hs;
      prev_p = hp;
    }

    // Duality on pure tripartite states.
    DensityOp phi = oracle::random_pure(SystemSpec({"A", "B", "C"}, {2, 2, 2}), g);
    for (double a : {2.0, 1.5}) {
      dual_dev = std::max(dual_dev, std::abs(purestate_duality_gap(phi, {"A"}, {"B"}, a)));
    }

    // α → 1 limits.
    double vn = h_cond_vn(rho, {"B"});
    limit_dev = std::max({limit_dev, std::abs(h_cond_sandwiched(rho, {"B"}, 1.001).value - vn),
                          std::abs(h_cond_petz_down(rho, {"B"}, 1.001) - vn)});

    // Concavity of s ↦ -s H*_{1/(1+s)} on 21 equispaced points of [-0.95, 0].
    std::vector<double> f;
    for (int i = 0; i <= 20; ++i) {
      double s = -0.95 + 0.95 * i / 20.0;
      double a = 1.0 / (1.0 + s);
      f.push_back(i == 20 ? 0.0 : -s * h_cond_sandwiched(rho, {"B"}, a).value);
    }
    for (int i = 1; i < 20; ++i) concave_max = std::max(concave_max, f[i - 1] - 2 * f[i] + f[i + 1]);
  }
  c.expect(add_dev <= 1e-6, "additivity deviation " + fmt(add_dev));
  c.expect(mono_dev <= 1e-8, "monotonicity violated by " + fmt(mono_dev));
  c.expect(order_dev <= 1e-8, "ordering violated by " + fmt(order_dev));
  c.expect(dual_dev < 1e-6, "duality gap " + fmt(dual_dev));
  c.expect(limit_dev <= 1e-2, "alpha->1 deviation " + fmt(limit_dev));
  c.expect(concave_max <= 1e-8, "second difference " + fmt(concave_max));
  return std::to_string(n) + " instances each: additivity " + fmt(add_dev) + ", monotone " +
         fmt(mono_dev) + ", order " + fmt(order_dev) + ", duality " + fmt(dual_dev) +
         ", limit " + fmt(limit_dev) + ", max 2nd diff " + fmt(concave_max);
}

std::string criterion7(Check& c) {
  oracle::Rng g(107);
  int tested = 0, agree_a = 0, agree_c = 0, pos = 0;
  for (int k = 0; k < 500 && tested < 50; ++k) {
    DecouplingInstance inst = random_instance(g, 3, 3, 3);
    double sum = oracle_vn_sum(inst);
    if (std::abs(sum) <= 1e-3) continue;
    ++tested;
    pos += sum > 0;
    bool ach = best_achievability(inst).positive;
    bool conv = best_converse(inst).positive;
    agree_a += ach == (sum > 0);
    agree_c += conv == (sum < 0);
    c.expect(ach == (sum > 0), "achievability sign mismatch, sum " + fmt(sum));
    c.expect(conv == (sum < 0), "converse sign mismatch, sum " + fmt(sum));
  }
  c.expect(tested == 50, "only " + std::to_string(tested) + " instances");
  return std::to_string(tested) + " instances (" + std::to_string(pos) +
         " with positive sum), agreement " + std::to_string(agree_a) + "/" +
         std::to_string(agree_c);
}

std::string criterion8(Check& c) {
  oracle::Rng g(108);
  std::vector<double> grid;
  for (int k = 0; k < 500; ++k) grid.push_back(kLn2 * k / 499.0);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    DensityOp rho = oracle::random_density(SystemSpec({"A", "E"}, {2, 2}), g, 1 + k % 4);
    DecouplingInstance inst(rho, oracle::random_channel(2, 2, 1 + k % 3, g));
    FenchelResult f = fenchel_check(inst, grid);
    double gap = std::abs(f.lhs - f.rhs);
    worst = std::max(worst, gap);
    c.expect(gap < 5e-3, "instance " + std::to_string(k) + " gap " + fmt(gap));
  }
  return "10 instances, max |lhs - rhs| = " + fmt(worst);
}

std::string criterion9(Check& c) {
  Channel id = Channel::identity(2, "A'", "C");
  DensityOp phi = max_entangled(2, "A", "A'");
  CodingReport r0 = coding_bounds_rates(id, phi, {0.0, 0.0});
  c.expect(r0.in_region, "(0,0) not in region");
  c.expect(r0.exponent1 > 0 && r0.exponent2 > 0, "exponents not positive at (0,0)");
  // H(A)_σ = 1 bit.
  double worst_edge = 0.0;
  for (double q : {0.0, 0.25, 0.5, 1.0}) {
    CodingReport r = coding_bounds_rates(id, phi, {q, 1.0 - q});
    worst_edge = std::max(worst_edge, std::abs(r.delta1 - 6.0));
    c.expect(r.delta1 == 6.0, "delta1 = " + fmt(r.delta1) + " at Q+E = H(A)");
  }
  // Unlimited E: the boundary peaks at ½ I(A:C) = 1 bit.
  std::vector<double> e_grid;
  for (int k = 0; k <= 400; ++k) e_grid.push_back(4.0 * k / 400.0);
  double q_max = 0.0;
  for (auto [e, q] : region_boundary(id, phi, e_grid)) q_max = std::max(q_max, q);
  DensityOp out = apply(id, phi);
  double half_i = 0.5 * mutual_info_vn(out, {"C"}) / kLn2;
  c.expect(std::abs(q_max - half_i) <= 1e-9, "Q_max " + fmt(q_max) + " vs " + fmt(half_i));
  return "exponents at (0,0) = " + fmt(r0.exponent1) + ", " + fmt(r0.exponent2) +
         "; max |delta1-6| on Q+E=H(A) = " + fmt(worst_edge) + "; Q_max = " + fmt(q_max) +
         " bits vs I/2 = " + fmt(half_i);
}

std::string criterion10(Check& c) {
  std::vector<RunConfig> configs;
  RunConfig twirl;
  twirl.command = "twirl-check";
  twirl.samples = 20000;
  twirl.seed = 1;
  twirl.streams = 4;
  configs.push_back(twirl);
  for (const char* f : {"identity_phi.json", "depolarizing_phi.json"}) {
    RunConfig mc;
    mc.command = "decouple-mc";
    mc.input = kFixtures + "/" + f;
    mc.samples = 1000;
    mc.seed = 77;
    mc.streams = 3;
    configs.push_back(mc);
  }
  int identical = 0;
  for (RunConfig cfg : configs) {
    std::string first = execute(cfg).dump(2);
    cfg.threads = 1;
    std::string again = execute(cfg).dump(2);
    cfg.threads = 4;
    std::string threaded = execute(cfg).dump(2);
    bool same = first == again && first == threaded;
    identical += same;
    c.expect(same, cfg.command + " report differs between runs");
  }
  // The library-level MC acceptance runs as well.
  oracle::Rng g(110);
  DecouplingInstance inst = random_instance(g, 3, 3, 3);
  McOptions opt;
  opt.n_samples = 1000;
  opt.seed = 9;
  opt.n_streams = 5;
  McEstimate a = mc_decoupling_error(inst, opt);
  opt.n_threads = 3;
  McEstimate b = mc_decoupling_error(inst, opt);
  c.expect(a.mean == b.mean && a.std_error == b.std_error, "library MC differs across threads");
  return std::to_string(identical) + "/" + std::to_string(configs.size()) +
         " reports byte-identical across repeated and threaded runs";
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "closed-form decoupling errors", 1.0, criterion1);
  ok &= run_criterion(2, "partial-trace Choi entropy", 1.0, criterion2);
  ok &= run_criterion(3, "two-copy twirl", 30.0, criterion3);
  ok &= run_criterion(4, "second-moment identity", 120.0, criterion4);
  ok &= run_criterion(5, "bound sandwich", 600.0, criterion5);
  ok &= run_criterion(6, "entropy properties", 300.0, criterion6);
  ok &= run_criterion(7, "positivity dichotomies", 600.0, criterion7);
  ok &= run_criterion(8, "Fenchel duality", 120.0, criterion8);
  ok &= run_criterion(9, "coding region", 60.0, criterion9);
  ok &= run_criterion(10, "determinism", 120.0, criterion10);
  return ok ? 0 : 1;
}
