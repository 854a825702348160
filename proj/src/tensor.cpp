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

#include "rdl/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace rdl {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kClampTol = 1e-10;
constexpr double kHardNegTol = 1e-8;

std::vector<int> positions_of(const SystemSpec& spec, const Labels& labels) {
  std::vector<int> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) {
    int i = spec.index_of(l);
    if (i < 0) {
      throw ValidationError("unknown label '" + l + "' in " + spec.to_string());
    }
    pos.push_back(i);
  }
  return pos;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

SystemSpec::SystemSpec(Labels labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size()) {
    throw ValidationError("SystemSpec: " + std::to_string(labels_.size()) +
                          " labels but " + std::to_string(dims_.size()) +
                          " dims");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw ValidationError("SystemSpec: empty label");
    if (!seen.insert(labels_[i]).second) {
      throw ValidationError("SystemSpec: duplicate label '" + labels_[i] + "'");
    }
    if (dims_[i] < 1) {
      throw ValidationError("SystemSpec: dimension of '" + labels_[i] +
                            "' must be >= 1");
    }
    total_ *= dims_[i];
  }
}

int SystemSpec::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

int SystemSpec::dim(const std::string& label) const {
  int i = index_of(label);
  if (i < 0) throw ValidationError("unknown label '" + label + "'");
  return dims_[i];
}

Eigen::Index SystemSpec::dim_of(const Labels& labels) const {
  Eigen::Index d = 1;
  for (const auto& l : labels) d *= dim(l);
  return d;
}

SystemSpec SystemSpec::subset(const Labels& labels) const {
  std::vector<int> dims;
  for (const auto& l : labels) dims.push_back(dim(l));
  return SystemSpec(labels, dims);
}

SystemSpec SystemSpec::without(const Labels& labels) const {
  for (const auto& l : labels) dim(l);
  Labels keep;
  std::vector<int> dims;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (std::find(labels.begin(), labels.end(), labels_[i]) == labels.end()) {
      keep.push_back(labels_[i]);
      dims.push_back(dims_[i]);
    }
  }
  return SystemSpec(keep, dims);
}

SystemSpec SystemSpec::concat(const SystemSpec& other) const {
  Labels labels = labels_;
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SystemSpec(labels, dims);
}

SystemSpec SystemSpec::with_suffix(const std::string& suffix) const {
  Labels labels;
  for (const auto& l : labels_) labels.push_back(l + suffix);
  return SystemSpec(labels, dims_);
}

std::string SystemSpec::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) os << ", ";
    os << labels_[i] << ":" << dims_[i];
  }
  os << "]";
  return os.str();
}

Op::Op(SystemSpec s, Matrix m) : spec(std::move(s)), matrix(std::move(m)) {
  if (matrix.rows() != spec.total_dim() || matrix.cols() != spec.total_dim()) {
    throw ValidationError("Op: matrix is " + std::to_string(matrix.rows()) +
                          "x" + std::to_string(matrix.cols()) + " but spec " +
                          spec.to_string() + " has dimension " +
                          std::to_string(spec.total_dim()));
  }
}

Op Op::identity(const SystemSpec& s) {
  return Op(s, Matrix::Identity(s.total_dim(), s.total_dim()));
}

Op Op::zero(const SystemSpec& s) {
  return Op(s, Matrix::Zero(s.total_dim(), s.total_dim()));
}

bool Op::is_hermitian(double tol) const {
  return max_abs(matrix - matrix.adjoint()) <= tol;
}

Op& Op::operator+=(const Op& o) {
  if (spec != o.spec) {
    throw ValidationError("spec mismatch: " + spec.to_string() + " vs " +
                          o.spec.to_string());
  }
  matrix += o.matrix;
  return *this;
}

Op& Op::operator-=(const Op& o) {
  if (spec != o.spec) {
    throw ValidationError("spec mismatch: " + spec.to_string() + " vs " +
                          o.spec.to_string());
  }
  matrix -= o.matrix;
  return *this;
}

Op operator+(Op a, const Op& b) { return a += b; }
Op operator-(Op a, const Op& b) { return a -= b; }
Op operator*(Op a, Complex c) { return a *= c; }
Op operator*(Complex c, Op a) { return a *= c; }

Op operator*(const Op& a, const Op& b) {
  if (a.spec != b.spec) {
    throw ValidationError("spec mismatch: " + a.spec.to_string() + " vs " +
                          b.spec.to_string());
  }
  return Op(a.spec, a.matrix * b.matrix);
}

DensityOp::DensityOp(Op op) : op_(std::move(op)) {
  const Matrix& m = op_.matrix;
  double herm = max_abs(m - m.adjoint());
  if (herm > kHermTol) {
    throw ValidationError("DensityOp: not Hermitian (max |x - x^dag| = " +
                          std::to_string(herm) + ")");
  }
  double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kHermTol) {
    throw ValidationError("DensityOp: trace is " + std::to_string(tr) +
                          ", expected 1");
  }
  Eigh e = eigh(m);
  if (e.values.size() > 0 && e.values.minCoeff() < -kClampTol) {
    throw ValidationError("DensityOp: negative eigenvalue " +
                          std::to_string(e.values.minCoeff()));
  }
  Eigen::VectorXd lam = e.values.cwiseMax(0.0);
  op_.matrix = e.vectors * lam.asDiagonal() * e.vectors.adjoint();
}

DensityOp DensityOp::from_numeric(Op op) {
  Matrix h = 0.5 * (op.matrix + op.matrix.adjoint());
  Eigh e = eigh(h);
  double scale = std::max(1.0, max_abs(h));
  if (e.values.size() > 0 && e.values.minCoeff() < -kHardNegTol * scale) {
    throw NumericalError("state has negative eigenvalue " +
                         std::to_string(e.values.minCoeff()));
  }
  Eigen::VectorXd lam = e.values.cwiseMax(0.0);
  double tr = lam.sum();
  if (!std::isfinite(tr) || std::abs(tr - 1.0) > kHardNegTol) {
    throw NumericalError("state has trace " + std::to_string(tr));
  }
  lam /= tr;
  op.matrix = e.vectors * lam.asDiagonal() * e.vectors.adjoint();
  return DensityOp(std::move(op), Trusted{});
}

DensityOp DensityOp::pure(const SystemSpec& spec, const Vector& psi) {
  if (psi.size() != spec.total_dim()) {
    throw ValidationError("pure state vector has wrong length");
  }
  double n = psi.norm();
  if (n == 0.0) throw ValidationError("pure state vector is zero");
  Vector v = psi / n;
  return DensityOp(Op(spec, v * v.adjoint()), Trusted{});
}

DensityOp DensityOp::maximally_mixed(const SystemSpec& spec) {
  const Eigen::Index d = spec.total_dim();
  return DensityOp(Op(spec, Matrix::Identity(d, d) / static_cast<double>(d)),
                   Trusted{});
}

bool DensityOp::is_pure(double tol) const {
  Eigh e = eigh(op_.matrix);
  return std::abs(e.values.maxCoeff() - 1.0) <= tol;
}

std::vector<Eigen::Index> basis_offsets(const SystemSpec& spec,
                                        const std::vector<int>& positions) {
  const auto& dims = spec.dims();
  std::vector<Eigen::Index> stride(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    stride[k] = stride[k + 1] * dims[k + 1];
  }
  std::vector<Eigen::Index> offs{0};
  for (int p : positions) {
    std::vector<Eigen::Index> next;
    next.reserve(offs.size() * dims[p]);
    for (Eigen::Index o : offs) {
      for (int digit = 0; digit < dims[p]; ++digit) {
        next.push_back(o + digit * stride[p]);
      }
    }
    offs.swap(next);
  }
  return offs;
}

Op tensor(const Op& a, const Op& b) {
  SystemSpec s = a.spec.concat(b.spec);
  const Matrix& x = a.matrix;
  const Matrix& y = b.matrix;
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return Op(std::move(s), std::move(out));
}

DensityOp tensor(const DensityOp& a, const DensityOp& b) {
  return DensityOp::from_numeric(tensor(a.op(), b.op()));
}

Op partial_trace(const Op& x, const Labels& keep) {
  std::vector<int> kept_pos = positions_of(x.spec, keep);
  std::sort(kept_pos.begin(), kept_pos.end());
  kept_pos.erase(std::unique(kept_pos.begin(), kept_pos.end()), kept_pos.end());
  std::vector<int> traced_pos;
  Labels kept_labels;
  std::vector<int> kept_dims;
  for (int i = 0; i < static_cast<int>(x.spec.size()); ++i) {
    if (std::binary_search(kept_pos.begin(), kept_pos.end(), i)) {
      kept_labels.push_back(x.spec.labels()[i]);
      kept_dims.push_back(x.spec.dims()[i]);
    } else {
      traced_pos.push_back(i);
    }
  }
  auto ko = basis_offsets(x.spec, kept_pos);
  auto to = basis_offsets(x.spec, traced_pos);
  const Eigen::Index n = static_cast<Eigen::Index>(ko.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (Eigen::Index t : to) s += x.matrix(ko[i] + t, ko[j] + t);
      out(i, j) = s;
    }
  }
  return Op(SystemSpec(kept_labels, kept_dims), std::move(out));
}

DensityOp partial_trace(const DensityOp& x, const Labels& keep) {
  return DensityOp::from_numeric(partial_trace(x.op(), keep));
}

Op permute(const Op& x, const Labels& order) {
  if (order.size() != x.spec.size()) {
    throw ValidationError("permute: order has " + std::to_string(order.size()) +
                          " labels, expected a permutation of " +
                          x.spec.to_string());
  }
  SystemSpec target = x.spec.subset(order);
  if (target == x.spec) return x;
  auto offs = basis_offsets(x.spec, positions_of(x.spec, order));
  const Eigen::Index n = x.spec.total_dim();
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = x.matrix(offs[i], offs[j]);
  }
  return Op(std::move(target), std::move(out));
}

DensityOp permute(const DensityOp& x, const Labels& order) {
  return DensityOp::from_numeric(permute(x.op(), order));
}

Op embed(const Op& a, const SystemSpec& full) {
  SystemSpec rest = full.without(a.spec.labels());
  for (const auto& l : a.spec.labels()) {
    if (full.dim(l) != a.spec.dim(l)) {
      throw ValidationError("embed: dimension mismatch on '" + l + "'");
    }
  }
  return permute(tensor(a, Op::identity(rest)), full.labels());
}

Eigh eigh(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

double schatten_norm(const Matrix& x, double p) {
  if (!(p >= 1.0)) {
    throw ValidationError("Schatten norm needs p >= 1, got " +
                          std::to_string(p));
  }
  Eigen::VectorXd s;
  if (max_abs(x - x.adjoint()) <= 1e-12 * std::max(1.0, max_abs(x))) {
    Matrix h = 0.5 * (x + x.adjoint());
    s = eigh(h).values.cwiseAbs();
  } else {
    s = Eigen::JacobiSVD<Matrix>(x).singularValues();
  }
  if (std::isinf(p)) return s.size() ? s.maxCoeff() : 0.0;
  if (p == 1.0) return s.sum();
  double smax = s.size() ? s.maxCoeff() : 0.0;
  if (smax == 0.0) return 0.0;
  // Scale by the largest singular value to keep the powers in range.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s[i] / smax, p);
  return smax * std::pow(acc, 1.0 / p);
}

double schatten_norm(const Op& x, double p) {
  return schatten_norm(x.matrix, p);
}

double trace_distance(const Op& a, const Op& b) {
  if (a.spec != b.spec) {
    throw ValidationError("trace_distance: spec mismatch " +
                          a.spec.to_string() + " vs " + b.spec.to_string());
  }
  Matrix d = a.matrix - b.matrix;
  Matrix h = 0.5 * (d + d.adjoint());
  return 0.5 * eigh(h).values.cwiseAbs().sum();
}

double trace_distance(const DensityOp& rho, const DensityOp& sigma) {
  return std::min(1.0, trace_distance(rho.op(), sigma.op()));
}

Matrix herm_function(const Matrix& x, const std::function<double(double)>& f) {
  double scale = std::max(1.0, max_abs(x));
  double herm = max_abs(x - x.adjoint());
  if (herm > 1e-8 * scale) {
    throw ValidationError("herm_function: input is not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  Eigh e = eigh(0.5 * (x + x.adjoint()));
  Eigen::VectorXd lam(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    double v = e.values[i];
    if (v < -kHardNegTol * scale) {
      throw ValidationError("herm_function: eigenvalue " + std::to_string(v) +
                            " is significantly negative");
    }
    lam[i] = f(std::max(v, 0.0));
  }
  return e.vectors * lam.asDiagonal() * e.vectors.adjoint();
}

Matrix herm_power(const Matrix& x, double p, double support_tol) {
  if (x.rows() == 0) return x;
  double scale = std::max(1.0, max_abs(x));
  double herm = max_abs(x - x.adjoint());
  if (herm > 1e-8 * scale) {
    throw ValidationError("herm_power: input is not Hermitian (deviation " +
                          std::to_string(herm) + ")");
  }
  Eigh e = eigh(0.5 * (x + x.adjoint()));
  double top = std::max(e.values.maxCoeff(), 0.0);
  double cut = support_tol * top;
  Eigen::VectorXd lam(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    double v = e.values[i];
    if (v < -kHardNegTol * scale) {
      throw ValidationError("herm_power: eigenvalue " + std::to_string(v) +
                            " is significantly negative");
    }
    // Below the cut is round-off on the kernel; small positive powers would
    // otherwise inflate it (1e-17^0.3 ~ 1e-5).
    lam[i] = v <= cut ? 0.0 : std::pow(v, p);
  }
  return e.vectors * lam.asDiagonal() * e.vectors.adjoint();
}

Op herm_power(const Op& x, double p) {
  return Op(x.spec, herm_power(x.matrix, p));
}

DensityOp max_entangled(int d, const std::string& a, const std::string& b) {
  if (d < 1) throw ValidationError("max_entangled: d must be >= 1");
  SystemSpec spec({a, b}, {d, d});
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v[i * d + i] = 1.0;
  return DensityOp::pure(spec, v);
}

Op swap_operator(int d, const std::string& a, const std::string& b) {
  if (d < 2) throw ValidationError("swap_operator: d must be >= 2");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Matrix f = Matrix::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  }
  return Op(SystemSpec({a, b}, {d, d}), std::move(f));
}

}  // namespace rdl
