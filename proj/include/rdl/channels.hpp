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

#ifndef RDL_CHANNELS_HPP
#define RDL_CHANNELS_HPP

#include <string>
#include <vector>

#include "rdl/tensor.hpp"

namespace rdl {

// CPTP map in Kraus form. Each Kraus operator is d_out x d_in.
class Channel {
 public:
  Channel(std::vector<Matrix> kraus, SystemSpec in, SystemSpec out);

  static Channel identity(int d, const std::string& in = "A",
                          const std::string& out = "C");
  static Channel unitary(const Matrix& u, SystemSpec in, SystemSpec out);
  // ρ ↦ Tr(ρ) I/d_out.
  static Channel completely_depolarizing(SystemSpec in, SystemSpec out);
  // Full trace onto a one-dimensional output.
  static Channel trace(SystemSpec in, const std::string& out = "C");
  // Tr_{discard} on an input of two factors; the kept factor is relabeled.
  static Channel partial_trace(int d_discard, int d_keep,
                               const std::string& discard = "A1",
                               const std::string& keep = "A2",
                               const std::string& out = "C");
  // ρ ↦ (1-p)ρ + p Σ_k |k⟩⟨k|ρ|k⟩⟨k|.
  static Channel dephasing(int d, double p, const std::string& in = "A",
                           const std::string& out = "C");

  const std::vector<Matrix>& kraus() const { return kraus_; }
  const SystemSpec& in_spec() const { return in_; }
  const SystemSpec& out_spec() const { return out_; }
  Eigen::Index d_in() const { return in_.total_dim(); }
  Eigen::Index d_out() const { return out_.total_dim(); }

 private:
  std::vector<Matrix> kraus_;
  SystemSpec in_;
  SystemSpec out_;
};

struct UnitaryBasis {
  int d = 0;
  std::vector<Matrix> elements;
};

// Labels of the Choi reference copy: each input label with "'" appended.
Labels choi_reference_labels(const Channel& t);

// ω = (id ⊗ T)(Φ) with factors ordered A' (reference) then the outputs.
DensityOp choi_state(const Channel& t);

// (T ⊗ id)(x) where the channel input labels are factors of x. The result is
// ordered as the outputs followed by the untouched factors of x.
Op apply(const Channel& t, const Op& x);
DensityOp apply(const Channel& t, const DensityOp& rho);

// Same map computed from the Choi operator as d² ⟨Φ_{AA'}| ω ⊗ ρ |Φ_{AA'}⟩.
// `in_labels` names the input factors of rho; omega must carry these labels
// with "'" appended. Output ordering matches apply().
Op apply_via_choi(const Op& omega, const Op& rho, const Labels& in_labels);
DensityOp apply_via_choi(const DensityOp& omega, const DensityOp& rho,
                         const Labels& in_labels);

// (I/|A|) ⊗ Tr_A x, kept in the original label order.
Op depolarize_EA(const Op& x, const Labels& targets);
inline Op depolarize_EA(const Op& x, const std::string& target) {
  return depolarize_EA(x, Labels{target});
}

// X^a Z^b at index b·d + a.
UnitaryBasis weyl_basis(int d);

// Σ_i Φ_i τ Φ_i over the Bell-type projectors Φ_i = (I ⊗ V_i) Φ (I ⊗ V_i)†
// acting on the first two factors of tau, each of dimension basis.d.
Op pinching(const Op& tau, const UnitaryBasis& basis);

struct Stinespring {
  Matrix isometry;    // (d_out · d_env) x d_in
  SystemSpec in;
  SystemSpec out;     // channel outputs followed by the environment
  SystemSpec env;
};

// V = Σ_k K_k ⊗ |k⟩_E; the environment is a single factor named `env_label`.
Stinespring stinespring(const Channel& t, const std::string& env_label = "Env");
// The isometry as a one-Kraus channel onto outputs ⊗ environment.
Channel stinespring_channel(const Channel& t,
                            const std::string& env_label = "Env");
// ρ ↦ Tr_out[V ρ V†].
Channel complementary(const Channel& t, const std::string& env_label = "Env");

}  // namespace rdl

#endif  // RDL_CHANNELS_HPP
