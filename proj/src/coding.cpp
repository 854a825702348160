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

#include "rdl/coding.hpp"

#include <algorithm>
#include <cmath>

#include "rdl/entropies.hpp"

namespace rdl {

namespace {

const double kLn2 = std::log(2.0);
// Sup values this close to zero are round-off in the entropies; snapping them
// keeps δ = 6 exact on the region boundary.
constexpr double kExponentFloor = 1e-13;

double snap(double exponent) { return std::abs(exponent) < kExponentFloor ? 0.0 : exponent; }

double dual_order(double alpha) { return alpha / (2.0 * alpha - 1.0); }

void require_pure(const DensityOp& x, const char* what) {
  if (!x.is_pure(1e-9)) throw ValidationError(std::string(what) + " must be pure");
}

void check_params(const CodeParams& p) {
  if (!std::isfinite(p.q_bits) || !std::isfinite(p.e_bits) || p.q_bits < 0.0 ||
      p.e_bits < 0.0) {
    throw ValidationError("code parameters Q and E must be finite and >= 0");
  }
}

Labels concat(Labels a, const Labels& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// σ_A and N(σ) on C ⊗ A for σ on A ⊗ A' with A' the channel input.
struct RateStates {
  DensityOp sigma_a;
  DensityOp output;
  Labels c;
};

RateStates rate_states(const Channel& channel, const DensityOp& sigma) {
  const Labels& in = channel.in_spec().labels();
  Labels a = sigma.spec().without(in).labels();
  if (a.empty()) throw ValidationError("sigma needs a reference system besides the channel input");
  return {partial_trace(sigma, a), apply(channel, sigma), channel.out_spec().labels()};
}

std::string unused_label(const SystemSpec& a, const SystemSpec& b, std::string base) {
  while (a.contains(base) || b.contains(base)) base += "_";
  return base;
}

}  // namespace

double epsilon_bound(double delta1, double delta2) {
  return std::sqrt(2.0 * std::sqrt(2.0 * delta1) + 2.0 * delta2);
}

CodingDeltas coding_bounds_general(const DensityOp& psi, const Labels& a,
                                   const Labels& r, const Channel& channel,
                                   const DensityOp& sigma) {
  require_pure(psi, "psi");
  require_pure(sigma, "sigma");
  const Labels& in = channel.in_spec().labels();
  Labels a2 = sigma.spec().without(in).labels();
  if (a2.empty()) throw ValidationError("sigma needs a system A'' besides the channel input");
  std::string env = unused_label(sigma.spec(), channel.out_spec(), "Env");
  DensityOp omega = apply(stinespring_channel(channel, env), sigma);

  DensityOp psi_a = partial_trace(psi, a);
  DensityOp psi_ar = partial_trace(psi, concat(a, r));
  DensityOp omega_a2 = partial_trace(omega, a2);
  DensityOp omega_a2e = partial_trace(omega, concat(a2, {env}));

  CodingDeltas out;
  AlphaMax m1 = sup_over_alpha(
      [&](double al) {
        return (al - 1.0) / al *
               (renyi_entropy(omega_a2, al) - renyi_entropy(psi_a, dual_order(al)));
      },
      1.0, 2.0);
  AlphaMax m2 = sup_over_alpha(
      [&](double be) {
        return (be - 1.0) / be *
               (h_cond_sandwiched(omega_a2e, {env}, be).value +
                h_cond_sandwiched(psi_ar, r, be).value);
      },
      1.0, 2.0);
  out.delta1 = 6.0 * std::exp(-snap(m1.value));
  out.delta2 = 6.0 * std::exp(-snap(m2.value));
  out.alpha_star = m1.alpha;
  out.beta_star = m2.alpha;
  return out;
}

CodingReport coding_bounds_rates(const Channel& channel, const DensityOp& sigma,
                                 const CodeParams& params) {
  check_params(params);
  require_pure(sigma, "sigma");
  RateStates st = rate_states(channel, sigma);
  const double sum = (params.q_bits + params.e_bits) * kLn2;
  const double diff = (params.q_bits - params.e_bits) * kLn2;

  AlphaMax m1 = sup_over_alpha(
      [&](double al) { return (al - 1.0) / al * (renyi_entropy(st.sigma_a, al) - sum); },
      1.0, 2.0);
  // (1-β)/β with β = α/(2α-1) equals (α-1)/α.
  AlphaMax m2 = sup_over_alpha(
      [&](double al) {
        return (al - 1.0) / al *
               (coherent_info_sandwiched(st.output, st.c, dual_order(al)) - diff);
      },
      1.0, 2.0);

  CodingReport rep;
  rep.exponent1 = snap(m1.value);
  rep.exponent2 = snap(m2.value);
  rep.delta1 = 6.0 * std::exp(-rep.exponent1);
  rep.delta2 = 6.0 * std::exp(-rep.exponent2);
  rep.alpha_star = m1.alpha;
  rep.beta_star = dual_order(m2.alpha);
  rep.epsilon_bound = epsilon_bound(rep.delta1, rep.delta2);
  rep.in_region = in_region(channel, sigma, params);
  return rep;
}

bool in_region(const Channel& channel, const DensityOp& sigma,
               const CodeParams& params) {
  check_params(params);
  RateStates st = rate_states(channel, sigma);
  const double h = von_neumann_entropy(st.sigma_a);
  const double ic = -h_cond_vn(st.output, st.c);
  return (params.q_bits + params.e_bits) * kLn2 < h &&
         (params.q_bits - params.e_bits) * kLn2 < ic;
}

std::vector<std::pair<double, double>> region_boundary(
    const Channel& channel, const DensityOp& sigma, const std::vector<double>& e_grid) {
  RateStates st = rate_states(channel, sigma);
  const double h = von_neumann_entropy(st.sigma_a) / kLn2;
  const double ic = -h_cond_vn(st.output, st.c) / kLn2;
  std::vector<std::pair<double, double>> out;
  for (double e : e_grid) {
    if (!std::isfinite(e) || e < 0.0) {
      throw ValidationError("region_boundary: E values must be finite and >= 0");
    }
    out.emplace_back(e, std::max(0.0, std::min(h - e, ic + e)));
  }
  return out;
}

double purestate_duality_gap(const DensityOp& phi, const Labels& a,
                             const Labels& b, double alpha) {
  require_pure(phi, "phi");
  if (!(alpha > 0.5) || !std::isfinite(alpha)) {
    throw ValidationError("purestate_duality_gap: alpha must lie in (1/2, inf)");
  }
  Labels c = phi.spec().without(concat(a, b)).labels();
  double hb = h_cond_sandwiched(partial_trace(phi, concat(a, b)), b, alpha).value;
  double hc = h_cond_sandwiched(partial_trace(phi, concat(a, c)), c, dual_order(alpha)).value;
  return hb + hc;
}

}  // namespace rdl
