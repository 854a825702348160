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

#ifndef RDL_HAAR_HPP
#define RDL_HAAR_HPP

#include <cstdint>
#include <functional>
#include <limits>

#include "rdl/tensor.hpp"

namespace rdl {

// Stateless-keyed generator: the stream of bits depends only on
// (seed, stream, sample), so any partition of the draws can be replayed
// exactly regardless of which thread evaluates it. Satisfies
// UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t sample);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

 private:
  std::uint64_t state_;
};

// Haar unitary: complex Ginibre matrix, QR, then Q·diag(R_ii/|R_ii|).
Matrix sample_haar(int d, CounterRng& rng);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  long n_samples = 0;
  std::uint64_t seed = 0;
  int n_streams = 1;
};

struct McVectorEstimate {
  Eigen::VectorXd mean;
  Eigen::VectorXd std_error;
  long n_samples = 0;
  std::uint64_t seed = 0;
  int n_streams = 1;
};

struct McOptions {
  long n_samples = 10000;
  std::uint64_t seed = 0;
  int n_streams = 1;
  // Worker threads; the result does not depend on this.
  int n_threads = 1;
};

// Haar average of f over U(d). Draw j of stream s uses CounterRng(seed, s, j);
// stream s gets n/streams draws plus one if s < n % streams. Per-stream
// accumulators are merged in stream order.
McEstimate mc_expectation(const std::function<double(const Matrix&)>& f, int d,
                          const McOptions& opt);
McVectorEstimate mc_expectation_vector(
    const std::function<Eigen::VectorXd(const Matrix&)>& f, int d,
    const McOptions& opt);

// Φ̃ = Σ_ij |ii⟩⟨jj| (trace d). max_entangled() is the normalized Φ̃/d.
Op max_entangled_unnormalized(int d, const std::string& a = "A",
                              const std::string& b = "A'");

// Exchanges two factors of `spec` (identity elsewhere).
Op swap_factors(const SystemSpec& spec, const std::string& a,
                const std::string& b);

// Labels of the two-copy space used by the twirl: A, A', A~, A'~.
SystemSpec twirl_spec(int d);

// E_U[Φ̃^U ⊗ Φ̃^U] with U on A and Ã, as the closed form in I, F_A, F_{A'}
// and F_{AA'} on twirl_spec(d).
Op twirl_two_copy(int d);

// Θ(Y)(U) = d² ⟨Φ_{A'A}| U_A Y U_A† |Φ_{A'A}⟩ on the remaining factors.
Op theta(const Op& y, const Labels& a_prime, const Labels& a, const Matrix& u);

// E_U ‖Θ(Ẏ)(U)‖₂² in closed form, Ẏ = Y - E_A(Y).
double exact_theta_second_moment(const Op& y, const Labels& a_prime,
                                 const Labels& a);

}  // namespace rdl

#endif  // RDL_HAAR_HPP
