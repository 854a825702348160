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

// Entropic quantities. Everything is in nats.

#ifndef RDL_ENTROPIES_HPP
#define RDL_ENTROPIES_HPP

#include <functional>
#include <optional>
#include <string>

#include "rdl/tensor.hpp"

namespace rdl {

struct EntropyResult {
  double value = 0.0;
  double alpha = 1.0;
  std::optional<DensityOp> optimizer_sigma;
  int iterations = 0;
  bool converged = true;
  // Empty when converged; otherwise says what happened.
  std::string status;
};

// (1/(α-1)) ln Tr[(σ^γ ρ σ^γ)^α], γ = (1-α)/(2α). For α > 1 a support
// violation yields +infinity. α = 1 is rejected.
double d_alpha_sandwiched(const Op& rho, const Op& sigma, double alpha);

// -inf_σ D*_α(ρ_AB ‖ I_A ⊗ σ_B), B = cond. α = 1 gives the von Neumann value.
EntropyResult h_cond_sandwiched(const DensityOp& rho, const Labels& cond,
                                double alpha);

// (1/(1-α)) ln Tr[ρ^α (I_A ⊗ ρ_B)^{1-α}]; α = 1 gives the von Neumann value.
double h_cond_petz_down(const DensityOp& rho, const Labels& cond, double alpha);

// H(AB) - H(B).
double h_cond_vn(const DensityOp& rho, const Labels& cond);

double von_neumann_entropy(const DensityOp& rho);
// (1/(1-α)) ln Tr ρ^α; α = 1 gives the von Neumann entropy.
double renyi_entropy(const DensityOp& rho, double alpha);

// I*_β(A⟩B) = -H*_β(A|B).
double coherent_info_sandwiched(const DensityOp& rho, const Labels& cond,
                                double beta);
// I*_α(A':C) = inf_σ D*_α(ω ‖ ω_{A'} ⊗ σ_C) where A' = a_labels and C is the
// rest. α = 1 gives the von Neumann mutual information.
double mutual_info_sandwiched(const DensityOp& omega, const Labels& a_labels,
                              double alpha);
double mutual_info_vn(const DensityOp& omega, const Labels& a_labels);

struct AlphaMax {
  double alpha = 0.0;
  double value = 0.0;
};

// Maximizes f on [lo, hi]: 33-point grid, then golden-section search to width
// 1e-5 on the two cells around the best grid point. Throws NumericalError
// naming α if f is non-finite anywhere it is evaluated.
AlphaMax sup_over_alpha(const std::function<double(double)>& f, double lo,
                        double hi);

// The 33 grid points used by sup_over_alpha.
std::vector<double> alpha_grid(double lo, double hi, int n = 33);

namespace detail {

struct SigmaSolution {
  double divergence = 0.0;  // min over σ of ln Q(σ)/(α-1)
  Matrix sigma;             // optimizer on the full B space
  int iterations = 0;
  bool converged = true;
  std::string status;
};

// Minimizes ln Tr[((I ⊗ σ^γ) x (I ⊗ σ^γ))^α]/(α-1) over densities σ on B,
// where x is positive semidefinite on A ⊗ B (B the trailing d_b factor).
SigmaSolution minimize_sandwiched_sigma(const Matrix& x, Eigen::Index d_b,
                                        double alpha);

}  // namespace detail

}  // namespace rdl

#endif  // RDL_ENTROPIES_HPP
