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

#ifndef BERNMIX_SUPPORT_HPP
#define BERNMIX_SUPPORT_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bernmix/dataset.hpp"
#include "bernmix/errors.hpp"

namespace bernmix {

/// A box support [a, b] = [a_1, b_1] x ... x [a_d, b_d] with a_j < b_j.
/// Estimation happens on the affine image of the box, the unit cube; the
/// transforms below move data, densities and CDFs between the two.
class SupportBox {
 public:
  SupportBox(std::vector<double> lower, std::vector<double> upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size())
      throw domain_error("support box bounds must be nonempty, equal length");
    for (std::size_t j = 0; j < lower_.size(); ++j) {
      if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j]))
        throw domain_error("support box bounds must be finite");
      if (!(lower_[j] < upper_[j]))
        throw domain_error("support box requires a_j < b_j in dimension " +
                           std::to_string(j));
    }
  }

  /// The unit cube [0,1]^d.
  static SupportBox unit(std::size_t d) {
    return SupportBox(std::vector<double>(d, 0.0),
                      std::vector<double>(d, 1.0));
  }

  std::size_t dimension() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  double width(std::size_t j) const { return upper_[j] - lower_[j]; }

  /// V_d = prod(b_j - a_j).
  double volume() const {
    double v = 1.0;
    for (std::size_t j = 0; j < lower_.size(); ++j) v *= width(j);
    return v;
  }

  bool contains(std::span<const double> y) const {
    if (y.size() != dimension()) return false;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] < lower_[j] || y[j] > upper_[j]) return false;
    return true;
  }

  bool is_unit() const {
    for (std::size_t j = 0; j < lower_.size(); ++j)
      if (lower_[j] != 0.0 || upper_[j] != 1.0) return false;
    return true;
  }

  bool operator==(const SupportBox& other) const {
    return lower_ == other.lower_ && upper_ == other.upper_;
  }

  /// x_j = (y_j - a_j) / (b_j - a_j). Point must lie in the box;
  /// boundary points map to exactly 0 or 1.
  void to_unit(std::span<const double> y, std::span<double> x) const {
    if (y.size() != dimension() || x.size() != dimension())
      throw domain_error("point dimension mismatch");
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] < lower_[j] || y[j] > upper_[j])
        throw transform_error("point outside support box in dimension " +
                              std::to_string(j));
      x[j] = (y[j] == upper_[j]) ? 1.0 : (y[j] - lower_[j]) / width(j);
    }
  }

  /// y_j = a_j + (b_j - a_j) x_j.
  void from_unit(std::span<const double> x, std::span<double> y) const {
    if (x.size() != dimension() || y.size() != dimension())
      throw domain_error("point dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
      y[j] = lower_[j] + width(j) * x[j];
  }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

enum class TransformDirection { kToUnit, kFromUnit };

/// A box together with a direction; apply() is the corresponding affine map.
struct TransformSpec {
  SupportBox box;
  TransformDirection direction;

  void apply(std::span<const double> in, std::span<double> out) const {
    if (direction == TransformDirection::kToUnit)
      box.to_unit(in, out);
    else
      box.from_unit(in, out);
  }
};

/// Maps every row of `data` into the unit cube. Rows outside the box raise
/// a transform_error naming the first offending row.
inline Dataset to_unit(const Dataset& data, const SupportBox& box) {
  if (data.dimension() != box.dimension())
    throw domain_error("dataset/box dimension mismatch");
  std::vector<double> out(data.size() * data.dimension());
  for (std::size_t i = 0; i < data.size(); ++i) {
    try {
      box.to_unit(data.row(i),
                  std::span<double>(out.data() + i * data.dimension(),
                                    data.dimension()));
    } catch (const transform_error& e) {
      throw transform_error("row " + std::to_string(i) + ": " + e.what());
    }
  }
  return Dataset(data.size(), data.dimension(), std::move(out));
}

/// Inverse of to_unit().
inline Dataset from_unit(const Dataset& data, const SupportBox& box) {
  if (data.dimension() != box.dimension())
    throw domain_error("dataset/box dimension mismatch");
  std::vector<double> out(data.size() * data.dimension());
  for (std::size_t i = 0; i < data.size(); ++i)
    box.from_unit(data.row(i),
                  std::span<double>(out.data() + i * data.dimension(),
                                    data.dimension()));
  return Dataset(data.size(), data.dimension(), std::move(out));
}

/// Converts a unit-cube mixture density value into a density on the box:
/// division by the box volume V_d (the Jacobian of the affine map).
inline double density_back_transform(double unit_density,
                                     const SupportBox& box) {
  return unit_density / box.volume();
}

/// Smallest box containing the data, widened by `margin` times the per-axis
/// range. With margin > 0 all data points are strictly interior.
inline SupportBox auto_box(const Dataset& data, double margin = 0.05) {
  if (!(margin >= 0.0)) throw domain_error("auto box margin must be >= 0");
  if (data.size() < 2)
    throw transform_error("auto box needs at least two data rows");
  const std::size_t d = data.dimension();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], data(i, j));
      hi[j] = std::max(hi[j], data(i, j));
    }
  for (std::size_t j = 0; j < d; ++j) {
    const double range = hi[j] - lo[j];
    if (!(range > 0.0))
      throw transform_error("dimension " + std::to_string(j) +
                            " has zero range; cannot build a box");
    lo[j] -= margin * range;
    hi[j] += margin * range;
  }
  return SupportBox(std::move(lo), std::move(hi));
}

}  // namespace bernmix

#endif  // BERNMIX_SUPPORT_HPP
