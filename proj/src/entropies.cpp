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

#include "rdl/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rdl {

namespace {

constexpr int kMaxIterations = 500;
constexpr double kStepTol = 1e-12;
constexpr double kSupportTol = 1e-12;

void check_alpha(double alpha, double lo, const char* what) {
  if (!std::isfinite(alpha) || alpha < lo) {
    std::ostringstream os;
    os << what << ": alpha must be >= " << lo << ", got " << alpha;
    throw ValidationError(os.str());
  }
}

// Tr_A of a matrix on A ⊗ B with B the trailing factor of dimension d_b.
Matrix trace_leading(const Matrix& m, Eigen::Index d_b) {
  const Eigen::Index d_a = m.rows() / d_b;
  Matrix out = Matrix::Zero(d_b, d_b);
  for (Eigen::Index a = 0; a < d_a; ++a) out += m.block(a * d_b, a * d_b, d_b, d_b);
  return out;
}

// (I_A ⊗ s) x (I_A ⊗ s), B trailing.
Matrix sandwich_b(const Matrix& x, const Matrix& s) {
  const Eigen::Index d_b = s.rows();
  const Eigen::Index d_a = x.rows() / d_b;
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < d_a; ++i) {
    for (Eigen::Index j = 0; j < d_a; ++j) {
      out.block(i * d_b, j * d_b, d_b, d_b) =
          s * x.block(i * d_b, j * d_b, d_b, d_b) * s;
    }
  }
  return out;
}

double entropy_of_spectrum(const Eigen::VectorXd& lam) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] > 0.0) h -= lam[i] * std::log(lam[i]);
  }
  return h;
}

// ln Σ λ^α over the spectrum, ignoring eigenvalues below the relative support
// cut; -inf for a zero spectrum.
double log_trace_power(const Eigen::VectorXd& lam, double alpha) {
  const double top = std::max(lam.maxCoeff(), 0.0);
  if (top == 0.0) return -std::numeric_limits<double>::infinity();
  double q = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] > kSupportTol * top) q += std::pow(lam[i] / top, alpha);
  }
  return alpha * std::log(top) + std::log(q);
}

Labels complement(const SystemSpec& spec, const Labels& labels) {
  return spec.without(labels).labels();
}

// ρ reordered as (not cond) ⊗ cond.
Op cond_last(const Op& rho, const Labels& cond) {
  Labels order = complement(rho.spec, cond);
  order.insert(order.end(), cond.begin(), cond.end());
  return permute(rho, order);
}

struct Eval {
  double divergence;
  Matrix t;  // Tr_A[Y^α]
};

// ln Q/(α-1) and the partial trace needed by the update, for σ full rank on
// the restricted space. Y is scaled by its top eigenvalue before taking powers
// so large α neither overflows nor underflows; the update only needs the
// direction of Tr_A[Y^α].
Eval evaluate(const Matrix& x, const Eigh& sigma_eig, double alpha) {
  const double inf = std::numeric_limits<double>::infinity();
  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  const Eigen::Index d_b = sigma_eig.values.size();
  Eigen::VectorXd pw(d_b);
  for (Eigen::Index i = 0; i < pw.size(); ++i) {
    const double v = sigma_eig.values[i];
    if (!(v > 0.0) && gamma < 0.0) return {inf, Matrix::Zero(d_b, d_b)};
    pw[i] = std::pow(std::max(v, 0.0), gamma);
  }
  Matrix s = sigma_eig.vectors * pw.asDiagonal() * sigma_eig.vectors.adjoint();
  Matrix y = sandwich_b(x, s);
  Eigh ye = eigh(0.5 * (y + y.adjoint()));
  const double top = ye.values.maxCoeff();
  if (!(top > 0.0) || !std::isfinite(top)) return {inf, Matrix::Zero(d_b, d_b)};
  Eigen::VectorXd la(ye.values.size());
  double q = 0.0;
  for (Eigen::Index i = 0; i < la.size(); ++i) {
    la[i] = ye.values[i] > kSupportTol * top ? std::pow(ye.values[i] / top, alpha) : 0.0;
    q += la[i];
  }
  Matrix ya = ye.vectors * la.asDiagonal() * ye.vectors.adjoint();
  return {(alpha * std::log(top) + std::log(q)) / (alpha - 1.0), trace_leading(ya, d_b)};
}

// Divided differences f[μ_i, μ_j] of a scalar function on a spectrum.
template <class F, class DF>
Eigen::MatrixXd divided_differences(const Eigen::VectorXd& mu, F f, DF df) {
  const Eigen::Index n = mu.size();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double gap = mu[i] - mu[j];
      out(i, j) = std::abs(gap) > 1e-9 * std::max(std::abs(mu[i]), 1e-300)
                      ? (f(mu[i]) - f(mu[j])) / gap
                      : df(0.5 * (mu[i] + mu[j]));
    }
  }
  return out;
}

// Divergence and its gradient with respect to σ (Hermitian, Tr[G dσ] = dD).
struct Gradient {
  double divergence;
  Matrix grad;
};

Gradient evaluate_with_gradient(const Matrix& x, const Eigh& se, double alpha) {
  const double inf = std::numeric_limits<double>::infinity();
  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  const Eigen::Index d_b = se.values.size();
  const Eigen::Index d_a = x.rows() / d_b;
  for (Eigen::Index i = 0; i < d_b; ++i) {
    if (!(se.values[i] > 0.0)) return {inf, Matrix::Zero(d_b, d_b)};
  }
  Eigen::VectorXd pw = se.values.array().pow(gamma);
  Matrix s = se.vectors * pw.asDiagonal() * se.vectors.adjoint();
  Eigh ye = eigh(0.5 * (sandwich_b(x, s) + sandwich_b(x, s).adjoint()));
  const double top = ye.values.maxCoeff();
  if (!(top > 0.0) || !std::isfinite(top)) return {inf, Matrix::Zero(d_b, d_b)};
  Eigen::VectorXd la(ye.values.size()), lm(ye.values.size());
  double q = 0.0;
  for (Eigen::Index i = 0; i < la.size(); ++i) {
    const double v = ye.values[i] / top;
    const bool on = ye.values[i] > kSupportTol * top;
    la[i] = on ? std::pow(v, alpha) : 0.0;
    lm[i] = on ? std::pow(v, alpha - 1.0) : 0.0;
    q += la[i];
  }
  const double d = (alpha * std::log(top) + std::log(q)) / (alpha - 1.0);
  // dD = α/((α-1) top q) Tr[Ŷ^{α-1} dY], dY = (I⊗ds) x (I⊗s) + h.c.
  Matrix ym = ye.vectors * lm.asDiagonal() * ye.vectors.adjoint();
  Matrix xs(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < d_a; ++i) {
    for (Eigen::Index j = 0; j < d_a; ++j) {
      xs.block(i * d_b, j * d_b, d_b, d_b) = x.block(i * d_b, j * d_b, d_b, d_b) * s;
    }
  }
  Matrix k = xs * ym;
  Matrix m = trace_leading(k + k.adjoint(), d_b) * (alpha / ((alpha - 1.0) * top * q));
  Eigen::MatrixXd dd = divided_differences(
      se.values, [&](double t) { return std::pow(t, gamma); },
      [&](double t) { return gamma * std::pow(t, gamma - 1.0); });
  Matrix mp = se.vectors.adjoint() * m * se.vectors;
  Matrix g = se.vectors * mp.cwiseProduct(dd.cast<Complex>()) * se.vectors.adjoint();
  return {d, 0.5 * (g + g.adjoint())};
}

// BFGS over σ = e^H / Tr e^H, H Hermitian packed into r² reals. Starts from a
// full-rank σ and returns the best point found.
struct Polish {
  Matrix sigma;
  double divergence;
  bool converged;
  int iterations;
};

Polish bfgs_polish(const Matrix& x, const Matrix& sigma0, double alpha) {
  const Eigen::Index r = sigma0.rows();
  const Eigen::Index n = r * r;
  auto unpack = [&](const Eigen::VectorXd& v) {
    Matrix h(r, r);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) h(i, i) = v[k++];
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = i + 1; j < r; ++j) {
        h(i, j) = Complex(v[k], v[k + 1]);
        h(j, i) = std::conj(h(i, j));
        k += 2;
      }
    }
    return h;
  };
  struct Point {
    double f;
    Eigen::VectorXd g;
    Matrix sigma;
  };
  auto eval = [&](const Eigen::VectorXd& v) {
    Eigh he = eigh(unpack(v));
    const double shift = he.values.maxCoeff();
    Eigen::VectorXd ev = (he.values.array() - shift).exp();
    const double z = ev.sum();
    Eigh se{ev / z, he.vectors};
    Matrix sigma = he.vectors * (ev / z).cast<Complex>().asDiagonal() * he.vectors.adjoint();
    Gradient gr = evaluate_with_gradient(x, se, alpha);
    Point p{gr.divergence, Eigen::VectorXd::Zero(n), sigma};
    if (!std::isfinite(gr.divergence)) return p;
    // Chain rule through the normalized exponential.
    Matrix gp = he.vectors.adjoint() * gr.grad * he.vectors;
    const double c = (gp.diagonal().real().array() * (ev / z).array()).sum();
    Eigen::MatrixXd e = divided_differences(
        he.values.array() - shift, [](double t) { return std::exp(t); },
        [](double t) { return std::exp(t); });
    Matrix inner = gp - c * Matrix::Identity(r, r);
    Matrix gh = he.vectors * inner.cwiseProduct(e.cast<Complex>()) * he.vectors.adjoint() / z;
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) p.g[k++] = gh(i, i).real();
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = i + 1; j < r; ++j) {
        p.g[k++] = 2.0 * gh(i, j).real();
        p.g[k++] = 2.0 * gh(i, j).imag();
      }
    }
    return p;
  };

  Eigen::VectorXd v(n);
  {
    Matrix h = herm_power(sigma0, 1.0);  // symmetrized copy
    Eigh e = eigh(h);
    Eigen::VectorXd lg = e.values.cwiseMax(1e-300).array().log();
    Matrix lh = e.vectors * lg.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < r; ++i) v[k++] = lh(i, i).real();
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = i + 1; j < r; ++j) {
        v[k++] = lh(i, j).real();
        v[k++] = lh(i, j).imag();
      }
    }
  }
  Point cur = eval(v);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool converged = false;
  int it = 0;
  for (; it < kMaxIterations && std::isfinite(cur.f); ++it) {
    if (cur.g.lpNorm<Eigen::Infinity>() < 1e-11) {
      converged = true;
      break;
    }
    Eigen::VectorXd dir = -hinv * cur.g;
    double slope = dir.dot(cur.g);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      dir = -cur.g;
      slope = dir.dot(cur.g);
    }
    double t = 1.0;
    Point next = eval(v + t * dir);
    while (!(next.f <= cur.f + 1e-4 * t * slope) && t > 1e-12) {
      t *= 0.5;
      next = eval(v + t * dir);
    }
    if (!(next.f <= cur.f + 1e-4 * t * slope)) {
      // No sufficient decrease left: the remaining gradient is round-off.
      converged = cur.g.lpNorm<Eigen::Infinity>() < 1e-7;
      break;
    }
    Eigen::VectorXd sv = t * dir;
    Eigen::VectorXd yv = next.g - cur.g;
    const double sy = sv.dot(yv);
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      hinv = (id - rho * sv * yv.transpose()) * hinv * (id - rho * yv * sv.transpose()) +
             rho * sv * sv.transpose();
    }
    v += sv;
    const double drop = cur.f - next.f;
    cur = next;
    if (drop <= 1e-16 * std::max(1.0, std::abs(cur.f)) &&
        cur.g.lpNorm<Eigen::Infinity>() < 1e-7) {
      converged = true;
      break;
    }
  }
  return {cur.sigma, cur.f, converged, it};
}

Matrix normalized(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  return h / h.trace().real();
}

// Fibonacci sphere directions.
std::vector<Eigen::Vector3d> sphere_points(int n) {
  std::vector<Eigen::Vector3d> pts;
  const double golden = std::acos(-1.0) * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / n;
    double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    pts.emplace_back(rad * std::cos(phi), rad * std::sin(phi), z);
  }
  return pts;
}

}  // namespace

namespace detail {

SigmaSolution minimize_sandwiched_sigma(const Matrix& x, Eigen::Index d_b,
                                        double alpha) {
  if (x.rows() % d_b != 0) {
    throw ValidationError("sandwiched optimizer: dimension mismatch");
  }
  const Eigen::Index d_a = x.rows() / d_b;
  Eigh xb = eigh(trace_leading(x, d_b));
  const double top = xb.values.maxCoeff();
  if (!(top > 0.0)) throw ValidationError("sandwiched optimizer: zero operator");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < xb.values.size(); ++i) {
    if (xb.values[i] > kSupportTol * top) keep.push_back(i);
  }
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  Matrix w(d_b, r);
  Eigen::VectorXd lam(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    w.col(k) = xb.vectors.col(keep[k]);
    lam[k] = xb.values[keep[k]];
  }
  // Restrict to support(x_B); the optimum lives there.
  Matrix xr(d_a * r, d_a * r);
  for (Eigen::Index i = 0; i < d_a; ++i) {
    for (Eigen::Index j = 0; j < d_a; ++j) {
      xr.block(i * r, j * r, r, r) =
          w.adjoint() * x.block(i * d_b, j * d_b, d_b, d_b) * w;
    }
  }

  SigmaSolution sol;
  Matrix sigma = (lam / lam.sum()).cast<Complex>().asDiagonal();
  Eigh se = eigh(sigma);
  Eval cur = evaluate(xr, se, alpha);
  bool converged = (r == 1);
  int it = 0;
  bool stuck = false;
  for (; !converged && it < kMaxIterations; ++it) {
    Eigen::VectorXd pw(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      pw[i] = std::pow(std::max(se.values[i], 0.0), (alpha - 1.0) / 2.0);
    }
    Matrix p = se.vectors * pw.asDiagonal() * se.vectors.adjoint();
    Matrix target = normalized(herm_power(normalized(p * cur.t * p), 1.0 / alpha));

    Matrix next = target;
    Eigh ne = eigh(next);
    Eval cand = evaluate(xr, ne, alpha);
    double slack = 1e-15 * std::max(1.0, std::abs(cur.divergence));
    double weight = 1.0;
    while (!(cand.divergence <= cur.divergence + slack) && weight > 1e-6) {
      weight *= 0.5;
      next = normalized((1.0 - weight) * sigma + weight * target);
      ne = eigh(next);
      cand = evaluate(xr, ne, alpha);
    }
    double step = 0.5 * eigh(0.5 * ((next - sigma) + (next - sigma).adjoint()))
                            .values.cwiseAbs()
                            .sum();
    if (!(cand.divergence <= cur.divergence + slack)) {
      // No descent along the update direction: numerically stationary.
      stuck = true;
      converged = step < 1e-8;
      break;
    }
    sigma = next;
    se = ne;
    cur = cand;
    if (step < kStepTol) converged = true;
  }
  sol.iterations = it;

  if (!converged && r > 1) {
    // The fixed-point map is not a descent direction everywhere (large α in
    // particular); the objective is convex in σ, so finish with quasi-Newton.
    Matrix start = normalized(sigma + 1e-10 * Matrix::Identity(r, r));
    Polish pol = bfgs_polish(xr, start, alpha);
    sol.iterations += pol.iterations;
    if (pol.divergence <= cur.divergence) {
      sigma = pol.sigma;
      cur.divergence = pol.divergence;
    }
    converged = pol.converged;
  }

  if (!converged && r == 2) {
    // Bloch grid over densities on the support, then keep the better point.
    Matrix best_sigma = sigma;
    double best = cur.divergence;
    const auto dirs = sphere_points(1000);
    for (int ir = 0; ir < 100; ++ir) {
      const double rad = 0.01 * ir;
      for (const auto& n : dirs) {
        Matrix s(2, 2);
        s(0, 0) = 0.5 * (1.0 + rad * n.z());
        s(1, 1) = 0.5 * (1.0 - rad * n.z());
        s(0, 1) = 0.5 * rad * Complex(n.x(), -n.y());
        s(1, 0) = std::conj(s(0, 1));
        Eval e = evaluate(xr, eigh(s), alpha);
        if (e.divergence < best) {
          best = e.divergence;
          best_sigma = s;
        }
        if (ir == 0) break;
      }
    }
    sigma = best_sigma;
    cur.divergence = best;
    sol.status = "fixed-point iteration did not converge; Bloch grid fallback used";
  } else if (!converged) {
    sol.status = stuck ? "fixed-point iteration stalled"
                       : "fixed-point iteration hit the iteration limit";
  }
  sol.converged = converged;
  sol.divergence = cur.divergence;
  sol.sigma = w * sigma * w.adjoint();
  return sol;
}

}  // namespace detail

double d_alpha_sandwiched(const Op& rho, const Op& sigma, double alpha) {
  check_alpha(alpha, 0.0, "d_alpha_sandwiched");
  if (alpha == 0.0 || alpha == 1.0) {
    throw ValidationError("d_alpha_sandwiched: alpha must lie in (0,1) or (1,inf)");
  }
  if (rho.spec != sigma.spec) {
    throw ValidationError("d_alpha_sandwiched: spec mismatch");
  }
  const double gamma = (1.0 - alpha) / (2.0 * alpha);
  if (alpha > 1.0) {
    Matrix proj = herm_power(sigma.matrix, 0.0);
    Matrix off = rho.matrix - proj * rho.matrix * proj;
    double scale = std::max(1.0, rho.matrix.cwiseAbs().maxCoeff());
    if (off.cwiseAbs().maxCoeff() > 1e-10 * scale) {
      return std::numeric_limits<double>::infinity();
    }
  }
  Matrix s = herm_power(sigma.matrix, gamma);
  Matrix y = s * rho.matrix * s;
  Eigh e = eigh(0.5 * (y + y.adjoint()));
  double lq = log_trace_power(e.values, alpha);
  if (std::isinf(lq)) return std::numeric_limits<double>::infinity();
  return lq / (alpha - 1.0);
}

EntropyResult h_cond_sandwiched(const DensityOp& rho, const Labels& cond,
                                double alpha) {
  check_alpha(alpha, 0.5, "h_cond_sandwiched");
  EntropyResult res;
  res.alpha = alpha;
  SystemSpec b_spec = rho.spec().subset(cond);
  if (alpha == 1.0) {
    res.value = h_cond_vn(rho, cond);
    if (!cond.empty()) res.optimizer_sigma = partial_trace(rho, cond);
    return res;
  }
  Op x = cond_last(rho.op(), cond);
  auto sol = detail::minimize_sandwiched_sigma(x.matrix, b_spec.total_dim(), alpha);
  if (!std::isfinite(sol.divergence)) {
    std::ostringstream os;
    os << "conditional entropy is not finite at alpha=" << alpha;
    throw NumericalError(os.str());
  }
  res.value = -sol.divergence;
  res.iterations = sol.iterations;
  res.converged = sol.converged;
  res.status = sol.status;
  if (!cond.empty()) res.optimizer_sigma = DensityOp::from_numeric(Op(b_spec, sol.sigma));
  return res;
}

double h_cond_petz_down(const DensityOp& rho, const Labels& cond, double alpha) {
  check_alpha(alpha, 0.0, "h_cond_petz_down");
  if (alpha == 0.0) throw ValidationError("h_cond_petz_down: alpha must be > 0");
  if (alpha == 1.0) return h_cond_vn(rho, cond);
  Op x = cond_last(rho.op(), cond);
  const Eigen::Index d_b = rho.spec().dim_of(cond);
  Matrix rb = trace_leading(x.matrix, d_b);
  Matrix rb_pow = herm_power(rb, 1.0 - alpha);
  Matrix xa = herm_power(x.matrix, alpha);
  const Eigen::Index d_a = x.matrix.rows() / d_b;
  Complex tr = 0.0;
  for (Eigen::Index a = 0; a < d_a; ++a) {
    tr += (xa.block(a * d_b, a * d_b, d_b, d_b) * rb_pow).trace();
  }
  double v = std::log(tr.real()) / (1.0 - alpha);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "Petz conditional entropy is not finite at alpha=" << alpha;
    throw NumericalError(os.str());
  }
  return v;
}

double von_neumann_entropy(const DensityOp& rho) {
  return entropy_of_spectrum(eigh(rho.matrix()).values);
}

double h_cond_vn(const DensityOp& rho, const Labels& cond) {
  double h_ab = von_neumann_entropy(rho);
  if (cond.empty()) return h_ab;
  return h_ab - entropy_of_spectrum(eigh(partial_trace(rho.op(), cond).matrix).values);
}

double renyi_entropy(const DensityOp& rho, double alpha) {
  check_alpha(alpha, 0.0, "renyi_entropy");
  if (alpha == 0.0) throw ValidationError("renyi_entropy: alpha must be > 0");
  if (alpha == 1.0) return von_neumann_entropy(rho);
  return log_trace_power(eigh(rho.matrix()).values, alpha) / (1.0 - alpha);
}

double coherent_info_sandwiched(const DensityOp& rho, const Labels& cond,
                                double beta) {
  return -h_cond_sandwiched(rho, cond, beta).value;
}

double mutual_info_vn(const DensityOp& omega, const Labels& a_labels) {
  Labels c = complement(omega.spec(), a_labels);
  double h_a = entropy_of_spectrum(eigh(partial_trace(omega.op(), a_labels).matrix).values);
  double h_c = entropy_of_spectrum(eigh(partial_trace(omega.op(), c).matrix).values);
  return h_a + h_c - von_neumann_entropy(omega);
}

double mutual_info_sandwiched(const DensityOp& omega, const Labels& a_labels,
                              double alpha) {
  check_alpha(alpha, 0.5, "mutual_info_sandwiched");
  if (alpha == 1.0) return mutual_info_vn(omega, a_labels);
  Labels c = complement(omega.spec(), a_labels);
  Labels order = a_labels;
  order.insert(order.end(), c.begin(), c.end());
  Op x = permute(omega.op(), order);
  const Eigen::Index d_a = omega.spec().dim_of(a_labels);
  const Eigen::Index d_c = x.spec.total_dim() / d_a;
  // D*(ω‖τ⊗σ) = D*(x'‖I⊗σ) with x' = (τ^γ ⊗ I) ω (τ^γ ⊗ I).
  Matrix tau = partial_trace(omega.op(), a_labels).matrix;
  Matrix tg = herm_power(tau, (1.0 - alpha) / (2.0 * alpha));
  Matrix tgi = Matrix::Zero(d_a * d_c, d_a * d_c);
  for (Eigen::Index i = 0; i < d_a; ++i) {
    for (Eigen::Index j = 0; j < d_a; ++j) {
      tgi.block(i * d_c, j * d_c, d_c, d_c) =
          tg(i, j) * Matrix::Identity(d_c, d_c);
    }
  }
  Matrix xp = tgi * x.matrix * tgi;
  auto sol = detail::minimize_sandwiched_sigma(xp, d_c, alpha);
  if (!std::isfinite(sol.divergence)) {
    std::ostringstream os;
    os << "mutual information is not finite at alpha=" << alpha;
    throw NumericalError(os.str());
  }
  return sol.divergence;
}

std::vector<double> alpha_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
  g.back() = hi;
  return g;
}

AlphaMax sup_over_alpha(const std::function<double(double)>& f, double lo,
                        double hi) {
  if (!(lo < hi)) throw ValidationError("sup_over_alpha: need lo < hi");
  auto eval = [&](double a) {
    double v = f(a);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "objective is not finite at alpha=" << a;
      throw NumericalError(os.str());
    }
    return v;
  };
  const auto grid = alpha_grid(lo, hi);
  std::vector<double> vals(grid.size());
  std::size_t best = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    vals[k] = eval(grid[k]);
    if (vals[k] > vals[best]) best = k;
  }
  AlphaMax out{grid[best], vals[best]};
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  if (fc > out.value) out = {c, fc};
  if (fd > out.value) out = {d, fd};
  while (b - a > 1e-5) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
    if (fc > out.value) out = {c, fc};
    if (fd > out.value) out = {d, fd};
  }
  return out;
}

}  // namespace rdl
