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

// Decoupling errors and their one-shot bounds. Errors are trace distances
// (½‖·‖₁) throughout.

#ifndef RDL_DECOUPLING_HPP
#define RDL_DECOUPLING_HPP

#include <vector>

#include "rdl/channels.hpp"
#include "rdl/haar.hpp"
#include "rdl/tensor.hpp"

namespace rdl {

// A state ρ_AE and a channel T: A → C. A is the channel input; E is every
// other factor of ρ. The Choi state ω lives on A' ⊗ C with A' the input
// labels primed.
class DecouplingInstance {
 public:
  DecouplingInstance(DensityOp rho_ae, Channel channel);

  const DensityOp& rho() const { return rho_; }
  const Channel& channel() const { return channel_; }
  const DensityOp& omega() const { return omega_; }
  const DensityOp& omega_c() const { return omega_c_; }
  const DensityOp& rho_e() const { return rho_e_; }

  const Labels& a_labels() const { return channel_.in_spec().labels(); }
  const Labels& a_prime_labels() const { return a_prime_; }
  const Labels& c_labels() const { return channel_.out_spec().labels(); }
  const Labels& e_labels() const { return e_; }
  int d_a() const { return static_cast<int>(channel_.d_in()); }

 private:
  DensityOp rho_;
  Channel channel_;
  Labels a_prime_;
  Labels e_;
  DensityOp omega_;
  DensityOp omega_c_;
  DensityOp rho_e_;
};

struct ExponentReport {
  double alpha_star = 1.0;
  double exponent = 0.0;
  double bound = 1.0;
  bool positive = false;
};

// ½‖T(U ρ U†) - ω_C ⊗ ρ_E‖₁ by applying the channel directly.
double decoupling_error_at(const DecouplingInstance& inst, const Matrix& u);
// The same quantity as ½‖Θ((id - E_A)(ω ⊗ ρ))(U)‖₁.
double decoupling_error_via_theta(const DecouplingInstance& inst, const Matrix& u);
McEstimate mc_decoupling_error(const DecouplingInstance& inst, const McOptions& opt);

// H*_α(A'|C)_ω + H*_α(A|E)_ρ (von Neumann at α = 1).
double sandwiched_entropy_sum(const DecouplingInstance& inst, double alpha);
// H↓_α(A'|C)_ω + H↓_α(A|E)_ρ (von Neumann at α = 1).
double petz_entropy_sum(const DecouplingInstance& inst, double alpha);

// exp((1-α)/α (H*_α(A'|C)_ω + H*_α(A|E)_ρ + ln 3)), α ∈ [1, 2].
double achievability_bound(const DecouplingInstance& inst, double alpha);
// Maximizes (α-1)/α (H*_α(A'|C) + H*_α(A|E)) over [1, 2]; the bound field is
// achievability_bound at the maximizer.
ExponentReport best_achievability(const DecouplingInstance& inst);

// 1 - 2 exp((1-α)(H↓_α(A'|C)_ω + H↓_α(A|E)_ρ + ln 4/3)), α ∈ (0, 1).
double converse_bound(const DecouplingInstance& inst, double alpha);
// Maximizes (α-1)(H↓_α(A'|C) + H↓_α(A|E)) over [0.01, 1], the value at α = 1
// being its limit 0.
ExponentReport best_converse(const DecouplingInstance& inst);

// State-channel pairs sharing one set of labels, with probabilities.
struct Ensemble {
  std::vector<double> weights;
  std::vector<DecouplingInstance> pairs;
};

// Validates an ensemble: non-empty, matching labels and dims, weights
// non-negative and summing to 1 within 1e-10.
void validate_ensemble(const Ensemble& ens);
// ½‖Σ_i p_i (T_i(U ρ_i U†) - ω_C^(i) ⊗ ρ_E^(i))‖₁.
double ensemble_error_at(const Ensemble& ens, const Matrix& u);
McEstimate mc_ensemble_error(const Ensemble& ens, const McOptions& opt);

// τ on A' ⊗ A ⊗ C ⊗ E. `ce` holds every factor not in a_prime or a.
class JointInstance {
 public:
  JointInstance(DensityOp tau, Labels a_prime, Labels a);

  // τ = ω ⊗ ρ.
  static JointInstance from_product(const DecouplingInstance& inst);
  // τ = Σ_i p_i ω^(i) ⊗ ρ^(i).
  static JointInstance from_ensemble(const Ensemble& ens);

  const DensityOp& tau() const { return tau_; }
  const Labels& a_prime_labels() const { return a_prime_; }
  const Labels& a_labels() const { return a_; }
  const Labels& ce_labels() const { return ce_; }

 private:
  DensityOp tau_;
  Labels a_prime_;
  Labels a_;
  Labels ce_;
};

// 2 exp((1-α)/α (H*_α(AA'|CE)_τ + ln 3)), α ∈ [1, 2]; a bound on the full
// trace norm ‖·‖₁ of the decoupling error operator.
double joint_achievability_bound(const JointInstance& inst, double alpha);
// 1 - 2 exp((1-α)(H↓_α(AA'|CE)_τ + ln 4/3)), α ∈ (0, 1).
double joint_converse_bound(const JointInstance& inst, double alpha);

// (χ + m)^{-1/2} χ (χ + m)^{-1/2} on the joint support.
Op pretty_good_measurement(const Op& chi, const Op& mean);

// sup_{α∈[1,2]} (α-1)/α (H*_α(A|E)_ρ + ln|A| - 2R); bound = exp(-exponent).
ExponentReport mother_exponent(const DensityOp& rho_ae, const Labels& a, double r);
// sup_{α∈[1,2]} (α-1)/α (2R - I*_α(A':C)_ω); bound = exp(-exponent). Rejects
// ω whose A' marginal is not maximally mixed within 1e-8.
ExponentReport father_exponent(const DensityOp& omega, const Labels& a_prime,
                               double r);

struct FenchelResult {
  double lhs = 0.0;   // sup_α (α-1)/α (H*_α(A|E) + H*_α(A'|C))
  double rhs = 0.0;   // min over the R grid of mother(R) + father(R)
  double r_star = 0.0;
};

FenchelResult fenchel_check(const DensityOp& rho_ae, const Labels& a,
                            const DensityOp& omega, const Labels& a_prime,
                            const std::vector<double>& grid_r);
inline FenchelResult fenchel_check(const DecouplingInstance& inst,
                                   const std::vector<double>& grid_r) {
  return fenchel_check(inst.rho(), inst.a_labels(), inst.omega(),
                       inst.a_prime_labels(), grid_r);
}

}  // namespace rdl

#endif  // RDL_DECOUPLING_HPP
