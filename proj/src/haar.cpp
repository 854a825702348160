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

#include "rdl/haar.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "rdl/channels.hpp"

namespace rdl {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Welford accumulator; merged with Chan's update.
struct Accumulator {
  long n = 0;
  Eigen::VectorXd mean;
  Eigen::VectorXd m2;

  void add(const Eigen::VectorXd& x) {
    if (n == 0) {
      mean = Eigen::VectorXd::Zero(x.size());
      m2 = Eigen::VectorXd::Zero(x.size());
    }
    ++n;
    Eigen::VectorXd delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta.cwiseProduct(x - mean);
  }

  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double nt = na + nb;
    Eigen::VectorXd delta = o.mean - mean;
    mean += delta * (nb / nt);
    m2 += o.m2 + delta.cwiseProduct(delta) * (na * nb / nt);
    n += o.n;
  }
};

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t sample) {
  std::uint64_t h = splitmix(seed + 0x9e3779b97f4a7c15ULL);
  h = splitmix(h ^ (stream + 0x632be59bd9b4e019ULL));
  h = splitmix(h ^ (sample + 0x85157af5ULL));
  state_ = h;
}

CounterRng::result_type CounterRng::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return splitmix(state_);
}

Matrix sample_haar(int d, CounterRng& rng) {
  if (d < 1) throw ValidationError("sample_haar: d must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  Matrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      double re = normal(rng);
      double im = normal(rng);
      z(i, j) = Complex(re * s, im * s);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

McVectorEstimate mc_expectation_vector(
    const std::function<Eigen::VectorXd(const Matrix&)>& f, int d,
    const McOptions& opt) {
  if (opt.n_samples < 2) throw ValidationError("Monte Carlo needs n >= 2 samples");
  if (opt.n_streams < 1) throw ValidationError("Monte Carlo needs >= 1 stream");
  if (d < 1) throw ValidationError("Monte Carlo: d must be >= 1");
  const int streams = opt.n_streams;
  const long n = opt.n_samples;
  std::vector<long> count(streams), first(streams);
  long offset = 0;
  for (int s = 0; s < streams; ++s) {
    count[s] = n / streams + (s < n % streams ? 1 : 0);
    first[s] = offset;
    offset += count[s];
  }

  std::vector<Accumulator> acc(streams);
  std::vector<std::exception_ptr> errs(streams);
  auto run_stream = [&](int s) {
    try {
      for (long j = 0; j < count[s]; ++j) {
        CounterRng rng(opt.seed, static_cast<std::uint64_t>(s),
                       static_cast<std::uint64_t>(j));
        Matrix u = sample_haar(d, rng);
        Eigen::VectorXd v = f(u);
        if (!v.allFinite()) {
          throw NumericalError("Monte Carlo integrand is not finite at draw " +
                               std::to_string(first[s] + j) + " (stream " +
                               std::to_string(s) + ", sample " +
                               std::to_string(j) + ")");
        }
        acc[s].add(v);
      }
    } catch (...) {
      errs[s] = std::current_exception();
    }
  };

  const int workers = std::max(1, std::min(opt.n_threads, streams));
  if (workers == 1) {
    for (int s = 0; s < streams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < streams; s += workers) run_stream(s);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs) {
    if (e) std::rethrow_exception(e);
  }

  Accumulator total;
  for (const auto& a : acc) total.merge(a);
  McVectorEstimate out;
  out.mean = total.mean;
  Eigen::VectorXd var = total.m2 / static_cast<double>(total.n - 1);
  out.std_error = (var.cwiseMax(0.0) / static_cast<double>(total.n)).cwiseSqrt();
  out.n_samples = total.n;
  out.seed = opt.seed;
  out.n_streams = streams;
  return out;
}

McEstimate mc_expectation(const std::function<double(const Matrix&)>& f, int d,
                          const McOptions& opt) {
  auto v = mc_expectation_vector(
      [&](const Matrix& u) {
        Eigen::VectorXd x(1);
        x[0] = f(u);
        return x;
      },
      d, opt);
  return {v.mean[0], v.std_error[0], v.n_samples, v.seed, v.n_streams};
}

Op max_entangled_unnormalized(int d, const std::string& a, const std::string& b) {
  if (d < 1) throw ValidationError("max_entangled_unnormalized: d must be >= 1");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = 1.0;
  }
  return Op(SystemSpec({a, b}, {d, d}), std::move(m));
}

Op swap_factors(const SystemSpec& spec, const std::string& a,
                const std::string& b) {
  if (spec.dim(a) != spec.dim(b)) {
    throw ValidationError("swap_factors: '" + a + "' and '" + b +
                          "' have different dimensions");
  }
  Labels order = spec.labels();
  std::swap(order[spec.index_of(a)], order[spec.index_of(b)]);
  // The permutation matrix P with (P x P†) = permute(x, order) maps
  // |..a..b..⟩ to |..b..a..⟩ when both factors share a dimension.
  auto offs = basis_offsets(spec, [&] {
    std::vector<int> pos;
    for (const auto& l : order) pos.push_back(spec.index_of(l));
    return pos;
  }());
  const Eigen::Index n = spec.total_dim();
  Matrix p = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) p(i, offs[i]) = 1.0;
  return Op(spec, std::move(p));
}

SystemSpec twirl_spec(int d) {
  return SystemSpec({"A", "A'", "A~", "A'~"}, {d, d, d, d});
}

Op twirl_two_copy(int d) {
  if (d < 2) throw ValidationError("twirl_two_copy: d must be >= 2");
  SystemSpec s = twirl_spec(d);
  Op fa = swap_factors(s, "A", "A~");
  Op fap = swap_factors(s, "A'", "A'~");
  const double dd = d;
  const double c1 = 1.0 / (dd * dd - 1.0);
  const double c2 = 1.0 / (dd * dd * dd - dd);
  Matrix m = c1 * Matrix::Identity(s.total_dim(), s.total_dim()) -
             c2 * fa.matrix - c2 * fap.matrix + c1 * (fa.matrix * fap.matrix);
  return Op(s, std::move(m));
}

Op theta(const Op& y, const Labels& a_prime, const Labels& a, const Matrix& u) {
  const Eigen::Index d = y.spec.dim_of(a);
  if (y.spec.dim_of(a_prime) != d) {
    throw ValidationError("theta: A and A' dimensions differ");
  }
  if (u.rows() != d || u.cols() != d) {
    throw ValidationError("theta: unitary has the wrong dimension");
  }
  Labels order = a_prime;
  order.insert(order.end(), a.begin(), a.end());
  Labels both = order;
  SystemSpec rest = y.spec.without(both);
  for (const auto& l : rest.labels()) order.push_back(l);
  Op z = permute(y, order);
  const Eigen::Index r = rest.total_dim();
  // U acts on the middle factor of A' ⊗ A ⊗ rest.
  Matrix ua = Matrix::Zero(d * d * r, d * d * r);
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        ua.block((p * d + i) * r, (p * d + j) * r, r, r) =
            u(i, j) * Matrix::Identity(r, r);
      }
    }
  }
  Matrix w = ua * z.matrix * ua.adjoint();
  Matrix out = Matrix::Zero(r, r);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out += w.block((i * d + i) * r, (j * d + j) * r, r, r);
    }
  }
  out *= static_cast<double>(d);
  return Op(rest, std::move(out));
}

double exact_theta_second_moment(const Op& y, const Labels& a_prime,
                                 const Labels& a) {
  const Eigen::Index d = y.spec.dim_of(a);
  if (d < 2 || y.spec.dim_of(a_prime) != d) {
    throw ValidationError(
        "exact_theta_second_moment: need |A| = |A'| >= 2");
  }
  Op ydot = y - depolarize_EA(y, a);
  Op reduced = partial_trace(ydot, y.spec.without(a_prime).labels());
  const double dd = static_cast<double>(d);
  double full = ydot.matrix.squaredNorm();
  double part = reduced.matrix.squaredNorm();
  double v = dd * dd / (dd * dd - 1.0) * full - dd * dd / (dd * dd * dd - dd) * part;
  return std::max(v, 0.0);
}

}  // namespace rdl
