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

#ifndef BERNMIX_SIMPLEX_HPP
#define BERNMIX_SIMPLEX_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "bernmix/errors.hpp"

namespace bernmix {

/// Compensated (Neumaier) summation; the error does not grow with the number
/// of terms, which matters for simplex checks at large K.
inline double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

/// Mixture weights p on the (K-1)-simplex: componentwise nonnegative,
/// summing to 1 within 1e-12. Indexed by the multi-index rank of the
/// associated DegreeVector.
class MixtureCoefficients {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit MixtureCoefficients(std::vector<double> weights)
      : weights_(std::move(weights)) {
    if (weights_.empty())
      throw domain_error("coefficient vector must be nonempty");
    for (double w : weights_)
      if (!(w >= 0.0))
        throw domain_error("mixture coefficients must be nonnegative");
    const double sum = stable_sum(weights_);
    if (std::abs(sum - 1.0) > kSumTolerance)
      throw domain_error("mixture coefficients must sum to 1");
  }

  /// Uniform weights 1/K.
  static MixtureCoefficients uniform(std::size_t k) {
    if (k == 0) throw domain_error("K must be positive");
    std::vector<double> w(k, 1.0 / static_cast<double>(k));
    return MixtureCoefficients(std::move(w));
  }

  /// Normalizes a nonnegative weight vector to the simplex.
  static MixtureCoefficients normalized(std::vector<double> weights) {
    double sum = stable_sum(weights);
    if (!(sum > 0.0))
      throw domain_error("cannot normalize: weights sum to zero");
    for (double& w : weights) w /= sum;
    return MixtureCoefficients(std::move(weights));
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& values() const { return weights_; }
  std::span<const double> span() const { return weights_; }

 private:
  std::vector<double> weights_;
};

}  // namespace bernmix

#endif  // BERNMIX_SIMPLEX_HPP
