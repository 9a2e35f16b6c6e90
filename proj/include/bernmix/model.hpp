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

#ifndef BERNMIX_MODEL_HPP
#define BERNMIX_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "bernmix/basis.hpp"
#include "bernmix/beta.hpp"
#include "bernmix/dataset.hpp"
#include "bernmix/degree.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/rng.hpp"
#include "bernmix/simplex.hpp"
#include "bernmix/support.hpp"

namespace bernmix {

/// A fitted beta-mixture estimator: degrees, simplex coefficients in
/// lexicographic rank order, and the support box the data lived on.
/// Immutable after construction; all evaluations are pure.
class BernsteinModel {
 public:
  BernsteinModel(DegreeVector degrees, MixtureCoefficients coefficients,
                 SupportBox support)
      : degrees_(std::move(degrees)),
        coefficients_(std::move(coefficients)),
        support_(std::move(support)) {
    if (coefficients_.size() != degrees_.component_count())
      throw domain_error("coefficient length does not match K of degrees");
    if (support_.dimension() != degrees_.dimension())
      throw domain_error("support box dimension does not match degrees");
  }

  /// The uniform density on `box`: degrees all zero, single unit weight.
  static BernsteinModel uniform(const SupportBox& box) {
    return BernsteinModel(
        DegreeVector(std::vector<int>(box.dimension(), 0)),
        MixtureCoefficients({1.0}), box);
  }

  const DegreeVector& degrees() const { return degrees_; }
  const MixtureCoefficients& coefficients() const { return coefficients_; }
  const SupportBox& support() const { return support_; }
  std::size_t dimension() const { return degrees_.dimension(); }

  /// Density value at y inside the support box:
  ///
  ///   V_d^{-1} sum_i p(i) prod_j beta_{m_j i_j}((y_j - a_j)/(b_j - a_j))
  ///
  /// Mixture sums run in log space (log-sum-exp over the positive weights).
  /// Points outside the box raise domain_error; use density_or_zero for the
  /// lenient variant.
  double density(std::span<const double> y) const {
    if (y.size() != dimension()) throw domain_error("point dimension mismatch");
    if (!support_.contains(y))
      throw domain_error("evaluation point outside the support box");
    std::vector<double> x(dimension());
    support_.to_unit(y, x);
    return unit_density(x) / support_.volume();
  }

  /// As density(), but points outside the box evaluate to 0.
  double density_or_zero(std::span<const double> y) const {
    if (y.size() != dimension()) throw domain_error("point dimension mismatch");
    if (!support_.contains(y)) return 0.0;
    return density(y);
  }

  /// Mixture density on the unit cube (no box transform, no volume factor).
  double unit_density(std::span<const double> x) const {
    const std::vector<double> row = log_basis_row(degrees_, x);
    const double lv = log_mixture_from_row(coefficients_.span(), row);
    return lv == kNegInf ? 0.0 : std::exp(lv);
  }

  /// CDF value at y inside the support box:
  ///   sum_i p(i) prod_j B_{m_j i_j}((y_j - a_j)/(b_j - a_j)).
  /// Exactly 0 at the lower corner and 1 at the upper corner.
  double cdf(std::span<const double> y) const {
    if (y.size() != dimension()) throw domain_error("point dimension mismatch");
    if (!support_.contains(y))
      throw domain_error("evaluation point outside the support box");
    std::vector<double> x(dimension());
    support_.to_unit(y, x);
    return unit_cdf(x);
  }

  /// Mixture CDF on the unit cube.
  double unit_cdf(std::span<const double> x) const {
    const std::size_t d = dimension();
    std::vector<std::vector<double>> tables(d);
    for (std::size_t j = 0; j < d; ++j)
      tables[j] = beta_cdf_table(degrees_[j], x[j]);
    // CDF factors are in [0, 1]; the weighted sum is safe in linear space.
    double acc = 0.0;
    for_each_multi_index(degrees_, [&](std::size_t rank,
                                       std::span<const int> index) {
      const double p = coefficients_[rank];
      if (p == 0.0) return;
      double prod = p;
      for (std::size_t j = 0; j < d; ++j)
        prod *= tables[j][static_cast<std::size_t>(index[j])];
      acc += prod;
    });
    return acc < 1.0 ? acc : 1.0;
  }

  /// Draws n points from the mixture: component by categorical(p), then
  /// coordinate j from Beta(i_j + 1, m_j - i_j + 1), then the affine map
  /// onto the support box. Deterministic given the seed.
  Dataset sample(std::size_t n, std::uint64_t seed) const {
    const std::size_t d = dimension();
    std::vector<double> out(n * d);
    Rng rng(seed);
    CategoricalSampler component(coefficients_.span());
    std::vector<double> x(d);
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t rank = component.draw(rng);
      const std::vector<int> index = degrees_.unrank(rank);
      for (std::size_t j = 0; j < d; ++j)
        x[j] = rng.beta_int(index[j] + 1, degrees_[j] - index[j] + 1);
      support_.from_unit(
          x, std::span<double>(out.data() + s * d, d));
    }
    return Dataset(n, d, std::move(out));
  }

 private:
  DegreeVector degrees_;
  MixtureCoefficients coefficients_;
  SupportBox support_;
};

}  // namespace bernmix

#endif  // BERNMIX_MODEL_HPP
