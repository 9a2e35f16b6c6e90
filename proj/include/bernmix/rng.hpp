// Copyright 2026 The bernmix Authors
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

#ifndef BERNMIX_RNG_HPP
#define BERNMIX_RNG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "bernmix/errors.hpp"

namespace bernmix {

/// splitmix64 step; used to derive independent stream seeds from a master
/// seed (e.g. per Monte Carlo run) without overlapping mt19937_64 states.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

/// Deterministic random source. All distribution transforms are written out
/// explicitly (not delegated to std:: distributions, whose algorithms are
/// implementation-defined), so a given seed yields the same stream on every
/// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw in (0, 1]; never 0, so log(u) is always finite.
  double uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform draw in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller. Draws are consumed in pairs; the spare
  /// is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Gamma(k, 1) for integer shape k >= 1, as a sum of k exponentials.
  double gamma_int(int k) {
    double acc = 0.0;
    for (int j = 0; j < k; ++j) acc -= std::log(uniform_pos());
    return acc;
  }

  /// Beta(a, b) for integer shapes a, b >= 1 via the gamma ratio.
  double beta_int(int a, int b) {
    const double ga = gamma_int(a);
    const double gb = gamma_int(b);
    return ga / (ga + gb);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Categorical sampler over fixed nonnegative weights, by inverse CDF on the
/// cumulative sums. Draw order and results are deterministic given the Rng
/// stream.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const double> weights) {
    cumulative_.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw domain_error("categorical weight is negative");
      acc += w;
      cumulative_.push_back(acc);
    }
    if (cumulative_.empty() || acc <= 0.0)
      throw domain_error("categorical weights sum to zero");
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform() * cumulative_.back();
    const auto it =
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
    return idx < cumulative_.size() ? idx : cumulative_.size() - 1;
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace bernmix

#endif  // BERNMIX_RNG_HPP
