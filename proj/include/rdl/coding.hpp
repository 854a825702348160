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

// Error bounds for entanglement-assisted quantum coding. Rates Q (qubits) and
// E (ebits) are given in bits; entropies are computed in nats.

#ifndef RDL_CODING_HPP
#define RDL_CODING_HPP

#include <utility>
#include <vector>

#include "rdl/channels.hpp"
#include "rdl/tensor.hpp"

namespace rdl {

struct CodeParams {
  double q_bits = 0.0;
  double e_bits = 0.0;
};

struct CodingReport {
  double delta1 = 6.0;
  double delta2 = 6.0;
  double epsilon_bound = 0.0;
  double alpha_star = 1.0;  // maximizer of the δ₁ exponent
  double beta_star = 1.0;   // maximizer of the δ₂ exponent, in [2/3, 1]
  double exponent1 = 0.0;
  double exponent2 = 0.0;
  bool in_region = false;
};

// sqrt(2 sqrt(2 δ₁) + 2 δ₂).
double epsilon_bound(double delta1, double delta2);

struct CodingDeltas {
  double delta1 = 6.0;
  double delta2 = 6.0;
  double alpha_star = 1.0;
  double beta_star = 1.0;
};

// General bounds for a pure ψ on A ⊗ B ⊗ R and a pure σ on A'' ⊗ A' where A'
// is the channel input. ω is the Stinespring output of σ on A'' ⊗ C ⊗ Env.
//   δ₁ = 6 exp(-sup_{α∈[1,2]} (α-1)/α (H*_α(A'')_ω - H*_{α/(2α-1)}(A)_ψ))
//   δ₂ = 6 exp(-sup_{β∈[1,2]} (β-1)/β (H*_β(A''|Env)_ω + H*_β(A|R)_ψ))
CodingDeltas coding_bounds_general(const DensityOp& psi, const Labels& a,
                                   const Labels& r, const Channel& channel,
                                   const DensityOp& sigma);

// Rate form with σ pure on A ⊗ A', A' the channel input.
//   δ₁ = 6 exp(-sup_{α∈[1,2]} (α-1)/α (H*_α(A)_σ - (Q+E) ln 2))
//   δ₂ = 6 exp(-sup_{β∈[2/3,1]} (1-β)/β (I*_β(A⟩C)_{N(σ)} - (Q-E) ln 2))
// The β range is searched through α ∈ [1,2], β = α/(2α-1).
CodingReport coding_bounds_rates(const Channel& channel, const DensityOp& sigma,
                                 const CodeParams& params);

// Q + E < H(A)_σ and Q - E < I(A⟩C)_{N(σ)} (compared in nats).
bool in_region(const Channel& channel, const DensityOp& sigma,
               const CodeParams& params);

// (E, Q_max) in bits with Q_max = max(0, min(H(A) - E, I(A⟩C) + E)).
std::vector<std::pair<double, double>> region_boundary(
    const Channel& channel, const DensityOp& sigma, const std::vector<double>& e_grid);

// H*_α(A|B)_φ + H*_{α/(2α-1)}(A|C)_φ for pure φ on A ⊗ B ⊗ C (C = the rest).
double purestate_duality_gap(const DensityOp& phi, const Labels& a,
                             const Labels& b, double alpha);

}  // namespace rdl

#endif  // RDL_CODING_HPP
