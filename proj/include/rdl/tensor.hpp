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

#ifndef RDL_TENSOR_HPP
#define RDL_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rdl/errors.hpp"

namespace rdl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Labels = std::vector<std::string>;

// Ordered registry of labeled tensor factors. Basis states are ordered
// lexicographically over the factors in label order, last factor fastest.
class SystemSpec {
 public:
  SystemSpec() = default;
  SystemSpec(Labels labels, std::vector<int> dims);

  // Rvalue overloads return by value so range-for over a temporary is safe.
  const Labels& labels() const& { return labels_; }
  Labels labels() && { return std::move(labels_); }
  const std::vector<int>& dims() const& { return dims_; }
  std::vector<int> dims() && { return std::move(dims_); }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  Eigen::Index total_dim() const { return total_; }

  // -1 when absent.
  int index_of(const std::string& label) const;
  bool contains(const std::string& label) const { return index_of(label) >= 0; }
  int dim(const std::string& label) const;
  // Product of the dimensions of the named factors.
  Eigen::Index dim_of(const Labels& labels) const;

  // Factors named in `labels`, in the order given.
  SystemSpec subset(const Labels& labels) const;
  SystemSpec without(const Labels& labels) const;
  SystemSpec concat(const SystemSpec& other) const;
  SystemSpec with_suffix(const std::string& suffix) const;

  bool operator==(const SystemSpec& other) const {
    return labels_ == other.labels_ && dims_ == other.dims_;
  }
  bool operator!=(const SystemSpec& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  Labels labels_;
  std::vector<int> dims_;
  Eigen::Index total_ = 1;
};

// Square operator tagged with the factors it acts on.
struct Op {
  SystemSpec spec;
  Matrix matrix;

  Op() = default;
  Op(SystemSpec s, Matrix m);

  static Op identity(const SystemSpec& s);
  static Op zero(const SystemSpec& s);

  Complex trace() const { return matrix.trace(); }
  Op adjoint() const { return Op(spec, matrix.adjoint()); }
  bool is_hermitian(double tol = 1e-10) const;

  Op& operator+=(const Op& o);
  Op& operator-=(const Op& o);
  Op& operator*=(Complex c) {
    matrix *= c;
    return *this;
  }
};

Op operator+(Op a, const Op& b);
Op operator-(Op a, const Op& b);
Op operator*(Op a, Complex c);
Op operator*(Complex c, Op a);
// Matrix product; both operands must share the same spec.
Op operator*(const Op& a, const Op& b);

// Unit-trace positive semidefinite operator. Construction checks Hermiticity
// and unit trace within 1e-10 and rejects eigenvalues below -1e-10; the
// accepted matrix is rebuilt with negative eigenvalues clamped to 0.
class DensityOp {
 public:
  explicit DensityOp(Op op);

  // For results of internal arithmetic: symmetrizes, clamps eigenvalues and
  // renormalizes. Still rejects eigenvalues below -1e-8 and traces off by more
  // than 1e-8.
  static DensityOp from_numeric(Op op);
  static DensityOp pure(const SystemSpec& spec, const Vector& psi);
  static DensityOp maximally_mixed(const SystemSpec& spec);

  const Op& op() const { return op_; }
  const SystemSpec& spec() const { return op_.spec; }
  const Matrix& matrix() const { return op_.matrix; }
  Eigen::Index dim() const { return op_.spec.total_dim(); }

  // Rank-one test on the spectrum.
  bool is_pure(double tol = 1e-9) const;

 private:
  struct Trusted {};
  DensityOp(Op op, Trusted) : op_(std::move(op)) {}
  Op op_;
};

// Operator-valued helpers. Results that should be states are returned as Op;
// wrap them with DensityOp::from_numeric where the invariant is needed.

Op tensor(const Op& a, const Op& b);
DensityOp tensor(const DensityOp& a, const DensityOp& b);

// Traces out everything not in `keep`. Kept factors stay in their original
// relative order.
Op partial_trace(const Op& x, const Labels& keep);
DensityOp partial_trace(const DensityOp& x, const Labels& keep);

// Reorders the factors to `order`, which must be a permutation of the labels.
Op permute(const Op& x, const Labels& order);
DensityOp permute(const DensityOp& x, const Labels& order);

// a ⊗ I on the remaining factors of `full`, arranged in `full` order.
Op embed(const Op& a, const SystemSpec& full);

// Row-index offsets of the basis states over the factors at `positions`,
// enumerated lexicographically in the given position order.
std::vector<Eigen::Index> basis_offsets(const SystemSpec& spec,
                                        const std::vector<int>& positions);

struct Eigh {
  Eigen::VectorXd values;
  Matrix vectors;
};
// Eigendecomposition of a Hermitian matrix (ascending eigenvalues). Only the
// lower triangle is read.
Eigh eigh(const Matrix& m);

// p = infinity gives the operator norm.
double schatten_norm(const Matrix& x, double p);
double schatten_norm(const Op& x, double p);

double trace_distance(const DensityOp& rho, const DensityOp& sigma);
// ½‖a − b‖₁ for Hermitian operators with matching specs.
double trace_distance(const Op& a, const Op& b);

// f applied to the spectrum of a Hermitian positive semidefinite matrix,
// after clamping eigenvalues in [-1e-8, 0) to 0.
Matrix herm_function(const Matrix& x, const std::function<double(double)>& f);
// x^p on the support: eigenvalues at or below support_tol · λ_max map to 0.
Matrix herm_power(const Matrix& x, double p, double support_tol = 1e-12);
Op herm_power(const Op& x, double p);

// Φ = |Φ⟩⟨Φ| with |Φ⟩ = d^{-1/2} Σ_i |ii⟩.
DensityOp max_entangled(int d, const std::string& a = "A",
                        const std::string& b = "A'");
// The swap F|ij⟩ = |ji⟩.
Op swap_operator(int d, const std::string& a = "A", const std::string& b = "A~");

}  // namespace rdl

#endif  // RDL_TENSOR_HPP
