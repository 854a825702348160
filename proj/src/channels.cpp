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

#include "rdl/channels.hpp"

#include <cmath>

namespace rdl {

namespace {

constexpr double kKrausTol = 1e-9;

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

// x with the named factors moved to the front, rest in original order.
Op front(const Op& x, const Labels& first) {
  Labels order = first;
  for (const auto& l : x.spec.without(first).labels()) order.push_back(l);
  return permute(x, order);
}

}  // namespace

Channel::Channel(std::vector<Matrix> kraus, SystemSpec in, SystemSpec out)
    : kraus_(std::move(kraus)), in_(std::move(in)), out_(std::move(out)) {
  if (kraus_.empty()) throw ValidationError("Channel: empty Kraus list");
  const Eigen::Index di = in_.total_dim();
  const Eigen::Index dout = out_.total_dim();
  Matrix acc = Matrix::Zero(di, di);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    const Matrix& K = kraus_[k];
    if (K.rows() != dout || K.cols() != di) {
      throw ValidationError("Channel: Kraus operator " + std::to_string(k) +
                            " is " + std::to_string(K.rows()) + "x" +
                            std::to_string(K.cols()) + ", expected " +
                            std::to_string(dout) + "x" + std::to_string(di));
    }
    acc += K.adjoint() * K;
  }
  double dev = (acc - Matrix::Identity(di, di)).cwiseAbs().maxCoeff();
  if (dev > kKrausTol) {
    throw ValidationError(
        "Channel: Kraus completeness violated (max |sum K^dag K - I| = " +
        std::to_string(dev) + ")");
  }
}

Channel Channel::identity(int d, const std::string& in, const std::string& out) {
  return Channel({Matrix::Identity(d, d)}, SystemSpec({in}, {d}),
                 SystemSpec({out}, {d}));
}

Channel Channel::unitary(const Matrix& u, SystemSpec in, SystemSpec out) {
  return Channel({u}, std::move(in), std::move(out));
}

Channel Channel::completely_depolarizing(SystemSpec in, SystemSpec out) {
  const Eigen::Index di = in.total_dim();
  const Eigen::Index dout = out.total_dim();
  std::vector<Matrix> kraus;
  const double w = 1.0 / std::sqrt(static_cast<double>(dout));
  for (Eigen::Index i = 0; i < dout; ++i) {
    for (Eigen::Index j = 0; j < di; ++j) {
      Matrix k = Matrix::Zero(dout, di);
      k(i, j) = w;
      kraus.push_back(std::move(k));
    }
  }
  return Channel(std::move(kraus), std::move(in), std::move(out));
}

Channel Channel::trace(SystemSpec in, const std::string& out) {
  const Eigen::Index di = in.total_dim();
  std::vector<Matrix> kraus;
  for (Eigen::Index j = 0; j < di; ++j) {
    Matrix k = Matrix::Zero(1, di);
    k(0, j) = 1.0;
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus), std::move(in), SystemSpec({out}, {1}));
}

Channel Channel::partial_trace(int d_discard, int d_keep,
                               const std::string& discard,
                               const std::string& keep, const std::string& out) {
  std::vector<Matrix> kraus;
  for (int j = 0; j < d_discard; ++j) {
    Matrix k = Matrix::Zero(d_keep, static_cast<Eigen::Index>(d_discard) * d_keep);
    for (int c = 0; c < d_keep; ++c) k(c, j * d_keep + c) = 1.0;
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus), SystemSpec({discard, keep}, {d_discard, d_keep}),
                 SystemSpec({out}, {d_keep}));
}

Channel Channel::dephasing(int d, double p, const std::string& in,
                           const std::string& out) {
  if (p < 0.0 || p > 1.0) {
    throw ValidationError("dephasing: p must lie in [0, 1]");
  }
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(d, d));
  for (int k = 0; k < d; ++k) {
    Matrix m = Matrix::Zero(d, d);
    m(k, k) = std::sqrt(p);
    kraus.push_back(std::move(m));
  }
  return Channel(std::move(kraus), SystemSpec({in}, {d}), SystemSpec({out}, {d}));
}

Labels choi_reference_labels(const Channel& t) {
  return t.in_spec().with_suffix("'").labels();
}

DensityOp choi_state(const Channel& t) {
  const Eigen::Index di = t.d_in();
  const Eigen::Index dout = t.d_out();
  SystemSpec spec = t.in_spec().with_suffix("'").concat(t.out_spec());
  Matrix w = Matrix::Zero(di * dout, di * dout);
  for (const Matrix& K : t.kraus()) {
    // v_k = Σ_i |i⟩ ⊗ K|i⟩
    Vector v(di * dout);
    for (Eigen::Index i = 0; i < di; ++i) v.segment(i * dout, dout) = K.col(i);
    w += v * v.adjoint();
  }
  w /= static_cast<double>(di);
  return DensityOp::from_numeric(Op(std::move(spec), std::move(w)));
}

Op apply(const Channel& t, const Op& x) {
  const Labels& in = t.in_spec().labels();
  for (const auto& l : in) {
    if (x.spec.dim(l) != t.in_spec().dim(l)) {
      throw ValidationError("apply: dimension of '" + l +
                            "' does not match the channel input");
    }
  }
  Op y = front(x, in);
  SystemSpec rest = x.spec.without(in);
  SystemSpec out_spec = t.out_spec().concat(rest);
  const Eigen::Index r = rest.total_dim();
  const Matrix id = Matrix::Identity(r, r);
  Matrix out = Matrix::Zero(out_spec.total_dim(), out_spec.total_dim());
  for (const Matrix& K : t.kraus()) {
    Matrix kk = kron(K, id);
    out += kk * y.matrix * kk.adjoint();
  }
  return Op(std::move(out_spec), std::move(out));
}

DensityOp apply(const Channel& t, const DensityOp& rho) {
  return DensityOp::from_numeric(apply(t, rho.op()));
}

Op apply_via_choi(const Op& omega, const Op& rho, const Labels& in_labels) {
  Labels primed;
  for (const auto& l : in_labels) {
    primed.push_back(l + "'");
    if (omega.spec.dim(l + "'") != rho.spec.dim(l)) {
      throw ValidationError("apply_via_choi: dimension of '" + l +
                            "' differs between omega and rho");
    }
  }
  Op w = front(omega, primed);
  Op r = front(rho, in_labels);
  SystemSpec c_spec = omega.spec.without(primed);
  SystemSpec e_spec = rho.spec.without(in_labels);
  const Eigen::Index d = rho.spec.dim_of(in_labels);
  const Eigen::Index dc = c_spec.total_dim();
  const Eigen::Index de = e_spec.total_dim();
  SystemSpec out_spec = c_spec.concat(e_spec);
  Matrix out = Matrix::Zero(dc * de, dc * de);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out += kron(w.matrix.block(i * dc, j * dc, dc, dc),
                  r.matrix.block(i * de, j * de, de, de));
    }
  }
  out *= static_cast<double>(d);
  return Op(std::move(out_spec), std::move(out));
}

DensityOp apply_via_choi(const DensityOp& omega, const DensityOp& rho,
                         const Labels& in_labels) {
  return DensityOp::from_numeric(apply_via_choi(omega.op(), rho.op(), in_labels));
}

Op depolarize_EA(const Op& x, const Labels& targets) {
  SystemSpec a = x.spec.subset(targets);
  SystemSpec rest = x.spec.without(targets);
  Op reduced = partial_trace(x, rest.labels());
  Op mixed(a, Matrix::Identity(a.total_dim(), a.total_dim()) /
                  static_cast<double>(a.total_dim()));
  return permute(tensor(mixed, reduced), x.spec.labels());
}

UnitaryBasis weyl_basis(int d) {
  if (d < 2) throw ValidationError("weyl_basis: d must be >= 2");
  Matrix X = Matrix::Zero(d, d);
  Matrix Z = Matrix::Zero(d, d);
  const double pi = std::acos(-1.0);
  for (int j = 0; j < d; ++j) {
    X((j + 1) % d, j) = 1.0;
    Z(j, j) = std::polar(1.0, 2.0 * pi * j / d);
  }
  UnitaryBasis basis{d, {}};
  Matrix zb = Matrix::Identity(d, d);
  for (int b = 0; b < d; ++b) {
    Matrix xa = Matrix::Identity(d, d);
    for (int a = 0; a < d; ++a) {
      basis.elements.push_back(xa * zb);
      xa = X * xa;
    }
    zb = Z * zb;
  }
  return basis;
}

Op pinching(const Op& tau, const UnitaryBasis& basis) {
  const int d = basis.d;
  if (tau.spec.size() < 2 || tau.spec.dims()[0] != d || tau.spec.dims()[1] != d) {
    throw ValidationError("pinching: the first two factors of " +
                          tau.spec.to_string() + " must both have dimension " +
                          std::to_string(d));
  }
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  const Eigen::Index r = tau.spec.total_dim() / dd;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix out = Matrix::Zero(tau.spec.total_dim(), tau.spec.total_dim());
  const Matrix id = Matrix::Identity(r, r);
  for (const Matrix& V : basis.elements) {
    Vector phi = Vector::Zero(dd);
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) phi[j * d + k] = norm * V(k, j);
    }
    Matrix bra = kron(phi.adjoint(), id);  // r x (dd r)
    Matrix m = bra * tau.matrix * bra.adjoint();
    out += kron(phi * phi.adjoint(), m);
  }
  return Op(tau.spec, std::move(out));
}

Stinespring stinespring(const Channel& t, const std::string& env_label) {
  const auto& ks = t.kraus();
  const Eigen::Index m = static_cast<Eigen::Index>(ks.size());
  const Eigen::Index dout = t.d_out();
  Matrix v = Matrix::Zero(dout * m, t.d_in());
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index c = 0; c < dout; ++c) v.row(c * m + k) = ks[k].row(c);
  }
  SystemSpec env({env_label}, {static_cast<int>(m)});
  return {std::move(v), t.in_spec(), t.out_spec().concat(env), env};
}

Channel stinespring_channel(const Channel& t, const std::string& env_label) {
  Stinespring s = stinespring(t, env_label);
  return Channel({s.isometry}, s.in, s.out);
}

Channel complementary(const Channel& t, const std::string& env_label) {
  const auto& ks = t.kraus();
  const Eigen::Index m = static_cast<Eigen::Index>(ks.size());
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < t.d_out(); ++c) {
    Matrix l(m, t.d_in());
    for (Eigen::Index k = 0; k < m; ++k) l.row(k) = ks[k].row(c);
    out.push_back(std::move(l));
  }
  return Channel(std::move(out), t.in_spec(),
                 SystemSpec({env_label}, {static_cast<int>(m)}));
}

}  // namespace rdl
