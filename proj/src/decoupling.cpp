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

#include "rdl/decoupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "rdl/entropies.hpp"

namespace rdl {

namespace {

constexpr double kConverseLo = 0.01;

void check_range(double alpha, double lo, double hi, bool open, const char* what) {
  bool ok = open ? (alpha > lo && alpha < hi) : (alpha >= lo && alpha <= hi);
  if (!std::isfinite(alpha) || !ok) {
    std::ostringstream os;
    os << what << ": alpha=" << alpha << " outside " << (open ? "(" : "[") << lo
       << ", " << hi << (open ? ")" : "]");
    throw ValidationError(os.str());
  }
}

Op conjugate_on(const Op& x, const Labels& labels, const Matrix& u) {
  SystemSpec a = x.spec.subset(labels);
  if (u.rows() != a.total_dim() || u.cols() != a.total_dim()) {
    throw ValidationError("unitary has the wrong dimension for " + a.to_string());
  }
  double dev = (u.adjoint() * u - Matrix::Identity(u.rows(), u.rows()))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > 1e-9) throw ValidationError("matrix is not unitary");
  Op big = embed(Op(a, u), x.spec);
  return Op(x.spec, big.matrix * x.matrix * big.matrix.adjoint());
}

// Sup of (α-1)/α · g(α) over [1, 2] where g is supplied with a cache.
class CachedCurve {
 public:
  explicit CachedCurve(std::function<double(double)> f) : f_(std::move(f)) {}
  double operator()(double a) {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    double v = f_(a);
    cache_.emplace(a, v);
    return v;
  }

 private:
  std::function<double(double)> f_;
  std::map<double, double> cache_;
};

double scaled(double alpha, double v) { return (alpha - 1.0) / alpha * v; }

}  // namespace

DecouplingInstance::DecouplingInstance(DensityOp rho_ae, Channel channel)
    : rho_(std::move(rho_ae)),
      channel_(std::move(channel)),
      omega_(choi_state(channel_)),
      omega_c_(partial_trace(omega_, channel_.out_spec().labels())),
      rho_e_(partial_trace(rho_, rho_.spec().without(channel_.in_spec().labels())
                                     .labels())) {
  const SystemSpec& in = channel_.in_spec();
  for (const auto& l : in.labels()) {
    if (!rho_.spec().contains(l)) {
      throw ValidationError("instance: channel input '" + l +
                            "' is not a factor of rho " + rho_.spec().to_string());
    }
    if (rho_.spec().dim(l) != in.dim(l)) {
      throw ValidationError("instance: dimension of '" + l +
                            "' differs between rho and the channel");
    }
  }
  a_prime_ = choi_reference_labels(channel_);
  e_ = rho_.spec().without(in.labels()).labels();
  for (const auto& l : rho_.spec().labels()) {
    if (channel_.out_spec().contains(l) && !in.contains(l)) {
      throw ValidationError("instance: output label '" + l +
                            "' collides with a factor of rho");
    }
    if (std::find(a_prime_.begin(), a_prime_.end(), l) != a_prime_.end()) {
      throw ValidationError("instance: reference label '" + l +
                            "' collides with a factor of rho");
    }
  }
  for (const auto& l : channel_.out_spec().labels()) {
    if (in.contains(l)) {
      throw ValidationError("instance: output label '" + l +
                            "' must differ from the input labels");
    }
  }
}

double decoupling_error_at(const DecouplingInstance& inst, const Matrix& u) {
  Op rotated = conjugate_on(inst.rho().op(), inst.a_labels(), u);
  Op out = apply(inst.channel(), rotated);
  Op target = tensor(inst.omega_c().op(), inst.rho_e().op());
  return trace_distance(out, target);
}

double decoupling_error_via_theta(const DecouplingInstance& inst, const Matrix& u) {
  Op joint = tensor(inst.omega().op(), inst.rho().op());
  Op y = joint - depolarize_EA(joint, inst.a_labels());
  Op z = theta(y, inst.a_prime_labels(), inst.a_labels(), u);
  return 0.5 * schatten_norm(0.5 * (z.matrix + z.matrix.adjoint()), 1.0);
}

McEstimate mc_decoupling_error(const DecouplingInstance& inst, const McOptions& opt) {
  return mc_expectation(
      [&](const Matrix& u) { return decoupling_error_at(inst, u); }, inst.d_a(),
      opt);
}

double sandwiched_entropy_sum(const DecouplingInstance& inst, double alpha) {
  return h_cond_sandwiched(inst.omega(), inst.c_labels(), alpha).value +
         h_cond_sandwiched(inst.rho(), inst.e_labels(), alpha).value;
}

double petz_entropy_sum(const DecouplingInstance& inst, double alpha) {
  return h_cond_petz_down(inst.omega(), inst.c_labels(), alpha) +
         h_cond_petz_down(inst.rho(), inst.e_labels(), alpha);
}

double achievability_bound(const DecouplingInstance& inst, double alpha) {
  check_range(alpha, 1.0, 2.0, false, "achievability_bound");
  if (alpha == 1.0) return 1.0;
  return std::exp((1.0 - alpha) / alpha *
                  (sandwiched_entropy_sum(inst, alpha) + std::log(3.0)));
}

ExponentReport best_achievability(const DecouplingInstance& inst) {
  AlphaMax m = sup_over_alpha(
      [&](double a) { return scaled(a, sandwiched_entropy_sum(inst, a)); }, 1.0,
      2.0);
  ExponentReport r;
  r.alpha_star = m.alpha;
  r.exponent = m.value;
  r.bound = std::exp(-m.value - (m.alpha - 1.0) / m.alpha * std::log(3.0));
  r.positive = m.value > 0.0;
  return r;
}

double converse_bound(const DecouplingInstance& inst, double alpha) {
  check_range(alpha, 0.0, 1.0, true, "converse_bound");
  return 1.0 - 2.0 * std::exp((1.0 - alpha) *
                              (petz_entropy_sum(inst, alpha) + std::log(4.0 / 3.0)));
}

ExponentReport best_converse(const DecouplingInstance& inst) {
  std::map<double, double> sums;
  auto g = [&](double a) {
    if (a >= 1.0) return 0.0;
    double s = petz_entropy_sum(inst, a);
    sums[a] = s;
    return (a - 1.0) * s;
  };
  AlphaMax m = sup_over_alpha(g, kConverseLo, 1.0);
  ExponentReport r;
  r.alpha_star = m.alpha;
  r.exponent = m.value;
  if (m.alpha >= 1.0) {
    r.bound = -1.0;
  } else {
    r.bound = 1.0 - 2.0 * std::exp((1.0 - m.alpha) *
                                   (sums.at(m.alpha) + std::log(4.0 / 3.0)));
  }
  r.positive = m.value > 0.0;
  return r;
}

void validate_ensemble(const Ensemble& ens) {
  if (ens.pairs.empty()) throw ValidationError("ensemble: no state-channel pairs");
  if (ens.weights.size() != ens.pairs.size()) {
    throw ValidationError("ensemble: weights and pairs differ in length");
  }
  double total = 0.0;
  for (double w : ens.weights) {
    if (!(w >= 0.0)) throw ValidationError("ensemble: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ValidationError("ensemble: weights sum to " + std::to_string(total));
  }
  const auto& first = ens.pairs.front();
  for (const auto& p : ens.pairs) {
    if (p.rho().spec() != first.rho().spec() ||
        p.channel().in_spec() != first.channel().in_spec() ||
        p.channel().out_spec() != first.channel().out_spec()) {
      throw ValidationError("ensemble: pairs must share labels and dimensions");
    }
  }
}

double ensemble_error_at(const Ensemble& ens, const Matrix& u) {
  Op acc;
  for (std::size_t i = 0; i < ens.pairs.size(); ++i) {
    const auto& inst = ens.pairs[i];
    Op rotated = conjugate_on(inst.rho().op(), inst.a_labels(), u);
    Op diff = apply(inst.channel(), rotated) -
              tensor(inst.omega_c().op(), inst.rho_e().op());
    diff *= ens.weights[i];
    if (i == 0) {
      acc = diff;
    } else {
      acc += diff;
    }
  }
  return 0.5 * schatten_norm(0.5 * (acc.matrix + acc.matrix.adjoint()), 1.0);
}

McEstimate mc_ensemble_error(const Ensemble& ens, const McOptions& opt) {
  validate_ensemble(ens);
  return mc_expectation([&](const Matrix& u) { return ensemble_error_at(ens, u); },
                        ens.pairs.front().d_a(), opt);
}

JointInstance::JointInstance(DensityOp tau, Labels a_prime, Labels a)
    : tau_(std::move(tau)), a_prime_(std::move(a_prime)), a_(std::move(a)) {
  if (a_.empty() || a_prime_.empty()) {
    throw ValidationError("joint instance: A and A' must be non-empty");
  }
  if (tau_.spec().dim_of(a_) != tau_.spec().dim_of(a_prime_)) {
    throw ValidationError("joint instance: |A| must equal |A'|");
  }
  Labels both = a_prime_;
  both.insert(both.end(), a_.begin(), a_.end());
  ce_ = tau_.spec().without(both).labels();
  // Rejects overlapping A and A'.
  tau_.spec().subset(both);
}

JointInstance JointInstance::from_product(const DecouplingInstance& inst) {
  return JointInstance(tensor(inst.omega(), inst.rho()), inst.a_prime_labels(),
                       inst.a_labels());
}

JointInstance JointInstance::from_ensemble(const Ensemble& ens) {
  validate_ensemble(ens);
  Op acc;
  for (std::size_t i = 0; i < ens.pairs.size(); ++i) {
    Op t = tensor(ens.pairs[i].omega().op(), ens.pairs[i].rho().op());
    t *= ens.weights[i];
    if (i == 0) {
      acc = t;
    } else {
      acc += t;
    }
  }
  const auto& f = ens.pairs.front();
  return JointInstance(DensityOp::from_numeric(acc), f.a_prime_labels(),
                       f.a_labels());
}

double joint_achievability_bound(const JointInstance& inst, double alpha) {
  check_range(alpha, 1.0, 2.0, false, "joint_achievability_bound");
  if (alpha == 1.0) return 2.0;
  double h = h_cond_sandwiched(inst.tau(), inst.ce_labels(), alpha).value;
  return 2.0 * std::exp((1.0 - alpha) / alpha * (h + std::log(3.0)));
}

double joint_converse_bound(const JointInstance& inst, double alpha) {
  check_range(alpha, 0.0, 1.0, true, "joint_converse_bound");
  double h = h_cond_petz_down(inst.tau(), inst.ce_labels(), alpha);
  return 1.0 - 2.0 * std::exp((1.0 - alpha) * (h + std::log(4.0 / 3.0)));
}

Op pretty_good_measurement(const Op& chi, const Op& mean) {
  if (chi.spec != mean.spec) {
    throw ValidationError("pretty_good_measurement: spec mismatch");
  }
  Matrix s = herm_power(chi.matrix + mean.matrix, -0.5);
  Matrix pi = s * chi.matrix * s;
  return Op(chi.spec, 0.5 * (pi + pi.adjoint()));
}

namespace {

ExponentReport from_sup(const AlphaMax& m) {
  ExponentReport r;
  r.alpha_star = m.alpha;
  r.exponent = m.value;
  r.bound = std::exp(-m.value);
  r.positive = m.value > 0.0;
  return r;
}

void check_rate(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw ValidationError("rate R must be finite and non-negative");
  }
}

void check_choi_marginal(const DensityOp& omega, const Labels& a_prime) {
  Op m = partial_trace(omega.op(), a_prime);
  const Eigen::Index d = m.spec.total_dim();
  double dev = (m.matrix - Matrix::Identity(d, d) / static_cast<double>(d))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > 1e-8) {
    throw ValidationError(
        "father_exponent: the A' marginal of omega is not maximally mixed");
  }
}

}  // namespace

ExponentReport mother_exponent(const DensityOp& rho_ae, const Labels& a, double r) {
  check_rate(r);
  Labels e = rho_ae.spec().without(a).labels();
  const double ln_a = std::log(static_cast<double>(rho_ae.spec().dim_of(a)));
  return from_sup(sup_over_alpha(
      [&](double al) {
        return scaled(al, h_cond_sandwiched(rho_ae, e, al).value + ln_a - 2.0 * r);
      },
      1.0, 2.0));
}

ExponentReport father_exponent(const DensityOp& omega, const Labels& a_prime,
                               double r) {
  check_rate(r);
  check_choi_marginal(omega, a_prime);
  return from_sup(sup_over_alpha(
      [&](double al) {
        return scaled(al, 2.0 * r - mutual_info_sandwiched(omega, a_prime, al));
      },
      1.0, 2.0));
}

FenchelResult fenchel_check(const DensityOp& rho_ae, const Labels& a,
                            const DensityOp& omega, const Labels& a_prime,
                            const std::vector<double>& grid_r) {
  if (grid_r.empty()) throw ValidationError("fenchel_check: empty R grid");
  for (double r : grid_r) check_rate(r);
  check_choi_marginal(omega, a_prime);
  Labels e = rho_ae.spec().without(a).labels();
  Labels c = omega.spec().without(a_prime).labels();
  const double ln_a = std::log(static_cast<double>(rho_ae.spec().dim_of(a)));

  CachedCurve h_ae([&](double al) { return h_cond_sandwiched(rho_ae, e, al).value; });
  CachedCurve h_ac([&](double al) { return h_cond_sandwiched(omega, c, al).value; });
  CachedCurve i_ac([&](double al) { return mutual_info_sandwiched(omega, a_prime, al); });

  FenchelResult out;
  out.lhs = sup_over_alpha([&](double al) { return scaled(al, h_ae(al) + h_ac(al)); },
                           1.0, 2.0)
                .value;
  out.rhs = std::numeric_limits<double>::infinity();
  for (double r : grid_r) {
    double mother =
        sup_over_alpha([&](double al) { return scaled(al, h_ae(al) + ln_a - 2.0 * r); },
                       1.0, 2.0)
            .value;
    double father =
        sup_over_alpha([&](double al) { return scaled(al, 2.0 * r - i_ac(al)); }, 1.0,
                       2.0)
            .value;
    if (mother + father < out.rhs) {
      out.rhs = mother + father;
      out.r_star = r;
    }
  }
  return out;
}

}  // namespace rdl
