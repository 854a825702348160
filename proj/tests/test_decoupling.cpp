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

#include <cmath>

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "rdl/decoupling.hpp"
#include "rdl/entropies.hpp"
#include "rdl/errors.hpp"

using namespace rdl;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

DecouplingInstance random_instance(oracle::Rng& g, int da, int dc, int de, int nk) {
  DensityOp rho = oracle::random_density(SystemSpec({"A", "E"}, {da, de}), g);
  return DecouplingInstance(rho, oracle::random_channel(da, dc, nk, g));
}

}  // namespace

TEST_CASE("instance wiring and label checks") {
  DecouplingInstance inst(max_entangled(2, "A", "E"), Channel::identity(2));
  CHECK(inst.a_prime_labels() == Labels{"A'"});
  CHECK(inst.e_labels() == Labels{"E"});
  CHECK(inst.omega().spec().labels() == Labels{"A'", "C"});
  CHECK(max_abs(inst.omega_c().matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-14);
  DensityOp bad = DensityOp::maximally_mixed(SystemSpec({"A", "C"}, {2, 2}));
  CHECK_THROWS_AS(DecouplingInstance(bad, Channel::identity(2)), ValidationError);
  DensityOp wrong = DensityOp::maximally_mixed(SystemSpec({"A", "E"}, {3, 2}));
  CHECK_THROWS_AS(DecouplingInstance(wrong, Channel::identity(2)), ValidationError);
}

TEST_CASE("identity channel on a maximally entangled input never decouples") {
  oracle::Rng g(51);
  for (int d : {2, 3}) {
    DecouplingInstance inst(max_entangled(d, "A", "E"), Channel::identity(d));
    for (int k = 0; k < 5; ++k) {
      double err = decoupling_error_at(inst, oracle::random_unitary(d, g));
      CHECK_THAT(err, WithinAbs((d * d - 1.0) / (d * d), 1e-10));
    }
  }
}

TEST_CASE("completely depolarizing channel decouples exactly") {
  oracle::Rng g(52);
  DecouplingInstance inst(max_entangled(3, "A", "E"),
                          Channel::completely_depolarizing(SystemSpec({"A"}, {3}),
                                                           SystemSpec({"C"}, {2})));
  for (int k = 0; k < 5; ++k) {
    CHECK(decoupling_error_at(inst, oracle::random_unitary(3, g)) < 1e-12);
  }
}

TEST_CASE("direct and Choi-side error computations agree") {
  oracle::Rng g(53);
  for (int trial = 0; trial < 30; ++trial) {
    int da = 2 + trial % 2;
    DecouplingInstance inst = random_instance(g, da, 1 + trial % 3, 2, 2 + trial % 2);
    Matrix u = oracle::random_unitary(da, g);
    CHECK_THAT(decoupling_error_via_theta(inst, u), WithinAbs(decoupling_error_at(inst, u), 1e-10));
  }
}

TEST_CASE("partial-trace channel Petz entropy closed form") {
  for (auto [da, dc] : {std::pair{4, 2}, std::pair{8, 2}, std::pair{6, 3}}) {
    Channel t = Channel::partial_trace(da / dc, dc);
    DensityOp w = choi_state(t);
    for (double a : {0.3, 0.5, 0.9}) {
      CHECK_THAT(h_cond_petz_down(w, {"C"}, a),
                 WithinAbs(std::log(double(da) / (dc * dc)), 1e-9));
    }
  }
}

TEST_CASE("bound evaluators respect their alpha ranges") {
  DecouplingInstance inst(max_entangled(2, "A", "E"), Channel::identity(2));
  CHECK(achievability_bound(inst, 1.0) == 1.0);
  CHECK_THROWS_AS(achievability_bound(inst, 2.5), ValidationError);
  CHECK_THROWS_AS(converse_bound(inst, 1.0), ValidationError);
  CHECK_THROWS_AS(converse_bound(inst, 0.0), ValidationError);
}

TEST_CASE("closed-form exponents for the trivial extremes") {
  // Identity on Φ: entropy sum is -2 ln 2 for every alpha.
  DecouplingInstance id(max_entangled(2, "A", "E"), Channel::identity(2));
  ExponentReport a = best_achievability(id);
  CHECK(a.alpha_star == 1.0);
  CHECK_THAT(a.exponent, WithinAbs(0.0, 1e-12));
  CHECK_FALSE(a.positive);
  ExponentReport c = best_converse(id);
  CHECK(c.positive);
  CHECK_THAT(c.exponent, WithinAbs(0.99 * 2.0 * std::log(2.0), 1e-8));

  // Completely depolarizing on a product input: H(A'|C) = H(A|E) = ln 2.
  DensityOp prod = DensityOp::maximally_mixed(SystemSpec({"A", "E"}, {2, 2}));
  DecouplingInstance dep(prod, Channel::completely_depolarizing(SystemSpec({"A"}, {2}),
                                                                SystemSpec({"C"}, {2})));
  ExponentReport b = best_achievability(dep);
  CHECK(b.alpha_star == 2.0);
  CHECK_THAT(b.exponent, WithinAbs(std::log(2.0), 1e-9));
  CHECK_THAT(b.bound, WithinAbs(std::exp(-std::log(2.0) - 0.5 * std::log(3.0)), 1e-9));
  CHECK_FALSE(best_converse(dep).positive);
}

TEST_CASE("joint bounds reduce to product bounds") {
  oracle::Rng g(54);
  for (int trial = 0; trial < 4; ++trial) {
    DecouplingInstance inst = random_instance(g, 2, 2, 2, 2);
    JointInstance j = JointInstance::from_product(inst);
    for (double a : {1.3, 1.8}) {
      CHECK_THAT(joint_achievability_bound(j, a), WithinAbs(2.0 * achievability_bound(inst, a), 1e-6));
    }
    for (double a : {0.3, 0.7}) {
      CHECK_THAT(joint_converse_bound(j, a), WithinAbs(converse_bound(inst, a), 1e-6));
    }
  }
}

TEST_CASE("single-member ensemble matches the pair error") {
  oracle::Rng g(55);
  DecouplingInstance inst = random_instance(g, 2, 2, 2, 2);
  Ensemble ens{{1.0}, {inst}};
  Matrix u = oracle::random_unitary(2, g);
  CHECK_THAT(ensemble_error_at(ens, u), WithinAbs(decoupling_error_at(inst, u), 1e-12));
  Ensemble bad{{0.7}, {inst}};
  CHECK_THROWS_AS(validate_ensemble(bad), ValidationError);
}

TEST_CASE("ensemble error is at most the average of member errors") {
  oracle::Rng g(56);
  DecouplingInstance p = random_instance(g, 2, 2, 2, 2);
  DecouplingInstance q = random_instance(g, 2, 2, 2, 2);
  Ensemble ens{{0.4, 0.6}, {p, q}};
  for (int k = 0; k < 10; ++k) {
    Matrix u = oracle::random_unitary(2, g);
    CHECK(ensemble_error_at(ens, u) <=
          0.4 * decoupling_error_at(p, u) + 0.6 * decoupling_error_at(q, u) + 1e-12);
  }
}

TEST_CASE("pretty good measurement is a valid POVM element") {
  oracle::Rng g(57);
  SystemSpec s({"X"}, {4});
  Op chi(s, oracle::random_density_matrix(4, g, 2));
  Op mean(s, oracle::random_density_matrix(4, g, 3));
  Op pi = pretty_good_measurement(chi, mean);
  Eigh e = eigh(pi.matrix);
  CHECK(e.values.minCoeff() > -1e-10);
  CHECK(e.values.maxCoeff() < 1.0 + 1e-10);
  Op pi_c = pretty_good_measurement(mean, chi);
  Matrix proj = herm_power(chi.matrix + mean.matrix, 0.0);
  CHECK(max_abs(pi.matrix + pi_c.matrix - proj) < 1e-10);
}

TEST_CASE("mother and father exponents on closed-form states") {
  DensityOp prod = DensityOp::maximally_mixed(SystemSpec({"A", "E"}, {2, 2}));
  // H*(A|E) = ln 2, so the exponent is sup (α-1)/α (2 ln 2 - 2R) = ln 2 - R.
  ExponentReport m = mother_exponent(prod, {"A"}, 0.25);
  CHECK_THAT(m.exponent, WithinAbs(std::log(2.0) - 0.25, 1e-9));
  CHECK_THAT(m.bound, WithinAbs(std::exp(-m.exponent), 1e-14));
  // Depolarizing Choi state: I*(A':C) = 0, so the exponent is R.
  DensityOp w = choi_state(Channel::completely_depolarizing(SystemSpec({"A"}, {2}),
                                                            SystemSpec({"C"}, {2})));
  CHECK_THAT(father_exponent(w, {"A'"}, 0.3).exponent, WithinAbs(0.3, 1e-9));
  CHECK_THROWS_AS(father_exponent(prod, {"A"}, -1.0), ValidationError);
  oracle::Rng g(3);
  DensityOp skew = oracle::random_pure(SystemSpec({"A'", "C"}, {2, 2}), g);
  CHECK_THROWS_AS(father_exponent(skew, {"A'"}, 0.1), ValidationError);
}

TEST_CASE("Fenchel combination closes the gap on a random qubit instance") {
  oracle::Rng g(58);
  DecouplingInstance inst = random_instance(g, 2, 2, 2, 2);
  std::vector<double> grid;
  for (int k = 0; k < 100; ++k) grid.push_back(std::log(2.0) * k / 99.0);
  FenchelResult f = fenchel_check(inst, grid);
  CHECK(f.lhs <= f.rhs + 1e-9);
  CHECK(std::abs(f.rhs - f.lhs) < 5e-3);
}
