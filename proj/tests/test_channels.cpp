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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"
#include "rdl/channels.hpp"
#include "rdl/errors.hpp"

using namespace rdl;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Kraus validation") {
  SystemSpec a({"A"}, {2}), c({"C"}, {2});
  Matrix k = Matrix::Identity(2, 2);
  k(1, 1) = 0.5;
  CHECK_THROWS_AS(Channel({k}, a, c), ValidationError);
  CHECK_THROWS_AS(Channel({}, a, c), ValidationError);
  CHECK_THROWS_AS(Channel({Matrix::Identity(3, 3)}, a, c), ValidationError);
  CHECK_NOTHROW(Channel::dephasing(3, 0.3));
}

TEST_CASE("apply preserves trace and positivity") {
  oracle::Rng g(21);
  for (int trial = 0; trial < 100; ++trial) {
    int din = 2 + trial % 2, dout = 1 + trial % 3, nk = 1 + (trial / 3) % 3;
    if (dout * nk < din) nk = din;
    Channel t = oracle::random_channel(din, dout, nk, g);
    DensityOp rho = oracle::random_density(SystemSpec({"A", "E"}, {din, 2}), g);
    Op out = apply(t, rho.op());
    CHECK(out.spec == SystemSpec({"C", "E"}, {dout, 2}));
    CHECK(std::abs(out.trace() - 1.0) < 1e-12);
    CHECK(eigh(out.matrix).values.minCoeff() > -1e-12);
  }
}

TEST_CASE("Choi state has a maximally mixed reference marginal") {
  oracle::Rng g(22);
  for (int trial = 0; trial < 20; ++trial) {
    int din = 2 + trial % 3;
    Channel t = oracle::random_channel(din, 2, din, g);
    DensityOp w = choi_state(t);
    CHECK(w.spec().labels() == Labels{"A'", "C"});
    Matrix ref = partial_trace(w, {"A'"}).matrix();
    CHECK(max_abs(ref - Matrix::Identity(din, din) / din) < 1e-10);
    // ω_C is the output on the maximally mixed input.
    Matrix wc = partial_trace(w, {"C"}).matrix();
    Matrix direct = apply(t, DensityOp::maximally_mixed(t.in_spec())).matrix();
    CHECK(max_abs(wc - direct) < 1e-12);
  }
}

TEST_CASE("applying through the Choi state agrees with Kraus application") {
  oracle::Rng g(23);
  for (int trial = 0; trial < 30; ++trial) {
    int din = 2 + trial % 2;
    Channel t = oracle::random_channel(din, 2 + trial % 2, 3, g);
    DensityOp rho = oracle::random_density(SystemSpec({"E", "A"}, {2, din}), g);
    Op direct = apply(t, rho.op());
    Op via = apply_via_choi(choi_state(t).op(), rho.op(), {"A"});
    CHECK(via.spec == direct.spec);
    CHECK(max_abs(via.matrix - direct.matrix) < 1e-12);
  }
}

TEST_CASE("identity and depolarizing channels") {
  oracle::Rng g(24);
  DensityOp rho = oracle::random_density(SystemSpec({"A"}, {3}), g);
  Channel id = Channel::identity(3);
  CHECK(max_abs(apply(id, rho).matrix() - rho.matrix()) < 1e-14);
  Channel dep = Channel::completely_depolarizing(SystemSpec({"A"}, {3}), SystemSpec({"C"}, {2}));
  CHECK(max_abs(apply(dep, rho).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-14);
  Channel tr = Channel::trace(SystemSpec({"A"}, {3}));
  CHECK(tr.d_out() == 1);
}

TEST_CASE("partial-trace channel discards the first factor") {
  oracle::Rng g(25);
  DensityOp rho = oracle::random_density(SystemSpec({"A1", "A2"}, {2, 3}), g);
  Channel t = Channel::partial_trace(2, 3);
  Matrix expect = oracle::naive_partial_trace(rho.matrix(), {2, 3}, {false, true});
  CHECK(max_abs(apply(t, rho).matrix() - expect) < 1e-14);
}

TEST_CASE("depolarize_EA replaces the target by a maximally mixed factor") {
  oracle::Rng g(26);
  Op x(SystemSpec({"B", "A", "C"}, {2, 3, 2}), oracle::ginibre(12, 12, g));
  Op y = depolarize_EA(x, "A");
  CHECK(y.spec == x.spec);
  Matrix bc = oracle::naive_partial_trace(x.matrix, {2, 3, 2}, {true, false, true});
  Matrix expect = Matrix::Zero(12, 12);
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 2; ++c)
          for (int cp = 0; cp < 2; ++cp)
            expect(b * 6 + a * 2 + c, bp * 6 + a * 2 + cp) = bc(b * 2 + c, bp * 2 + cp) / 3.0;
  CHECK(max_abs(y.matrix - expect) < 1e-14);
  // Idempotent.
  CHECK(max_abs(depolarize_EA(y, "A").matrix - y.matrix) < 1e-14);
}

TEST_CASE("Weyl basis is trace-orthogonal and a unitary 1-design") {
  oracle::Rng g(27);
  for (int d : {2, 3, 4}) {
    UnitaryBasis b = weyl_basis(d);
    REQUIRE(b.elements.size() == static_cast<std::size_t>(d * d));
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      CHECK(max_abs(b.elements[i] * b.elements[i].adjoint() - Matrix::Identity(d, d)) < 1e-13);
      for (std::size_t j = 0; j < b.elements.size(); ++j) {
        Complex ip = (b.elements[i].adjoint() * b.elements[j]).trace();
        CHECK(std::abs(ip - (i == j ? Complex(d) : Complex(0.0))) < 1e-12);
      }
    }
    Matrix x = oracle::random_density_matrix(d, g);
    Matrix twirl = Matrix::Zero(d, d);
    for (const auto& v : b.elements) twirl += v * x * v.adjoint();
    twirl /= static_cast<double>(d * d);
    CHECK(max_abs(twirl - Matrix::Identity(d, d) / d) < 1e-13);
  }
}

TEST_CASE("pinching is idempotent and dominates conjugation up to d^2") {
  oracle::Rng g(28);
  for (int d : {2, 3}) {
    UnitaryBasis b = weyl_basis(d);
    DensityOp tau = oracle::random_density(SystemSpec({"A", "A'", "R"}, {d, d, 2}), g);
    Op p = pinching(tau.op(), b);
    CHECK(max_abs(pinching(p, b).matrix - p.matrix) < 1e-10);
    CHECK(std::abs(p.trace() - 1.0) < 1e-12);
    Matrix gap = static_cast<double>(d * d) * p.matrix - tau.matrix();
    CHECK(eigh(gap).values.minCoeff() > -1e-10);
  }
}

TEST_CASE("Stinespring dilation reproduces the channel and its complement") {
  oracle::Rng g(29);
  for (int trial = 0; trial < 20; ++trial) {
    int din = 2 + trial % 2;
    Channel t = oracle::random_channel(din, 2, 3, g);
    Stinespring s = stinespring(t);
    CHECK(max_abs(s.isometry.adjoint() * s.isometry - Matrix::Identity(din, din)) < 1e-12);
    DensityOp rho = oracle::random_density(SystemSpec({"A", "R"}, {din, 2}), g);
    DensityOp full = apply(stinespring_channel(t), rho);
    CHECK(full.spec().labels() == Labels{"C", "Env", "R"});
    Matrix c = partial_trace(full, {"C", "R"}).matrix();
    CHECK(max_abs(c - apply(t, rho).matrix()) < 1e-12);
    Matrix e = partial_trace(full, {"Env", "R"}).matrix();
    CHECK(max_abs(e - apply(complementary(t), rho).matrix()) < 1e-12);
  }
}
