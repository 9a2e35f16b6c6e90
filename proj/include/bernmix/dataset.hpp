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

#ifndef BERNMIX_DATASET_HPP
#define BERNMIX_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bernmix/errors.hpp"

namespace bernmix {

/// An n x d sample, row-major. All entries are finite.
class Dataset {
 public:
  /// n may be zero (e.g. an empty sample request); fitting requires n >= 1
  /// and checks that separately.
  Dataset(std::size_t n, std::size_t d, std::vector<double> points)
      : n_(n), d_(d), points_(std::move(points)) {
    if (d_ == 0) throw domain_error("dataset dimension must be >= 1");
    if (points_.size() != n_ * d_)
      throw domain_error("dataset storage size does not match n x d");
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (!std::isfinite(points_[i]))
        throw domain_error("dataset entry at row " + std::to_string(i / d_) +
                           " is not finite");
  }

  std::size_t size() const { return n_; }
  std::size_t dimension() const { return d_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(points_.data() + i * d_, d_);
  }

  double operator()(std::size_t i, std::size_t j) const {
    return points_[i * d_ + j];
  }

  const std::vector<double>& storage() const { return points_; }

  /// Copy of marginal j as a flat vector.
  std::vector<double> column(std::size_t j) const {
    if (j >= d_) throw domain_error("column index out of range");
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = points_[i * d_ + j];
    return out;
  }

  bool in_unit_cube() const {
    return std::all_of(points_.begin(), points_.end(),
                       [](double v) { return v >= 0.0 && v <= 1.0; });
  }

  /// Returns a copy with every coordinate clamped into
  /// [eps, 1 - eps]. Requires the data to be in the unit cube already.
  Dataset clamped_to_unit(double eps) const {
    if (!(eps >= 0.0 && eps < 0.5))
      throw domain_error("clamp width must be in [0, 0.5)");
    if (!in_unit_cube())
      throw domain_error("dataset is not inside the unit cube");
    std::vector<double> pts = points_;
    for (double& v : pts) v = std::clamp(v, eps, 1.0 - eps);
    return Dataset(n_, d_, std::move(pts));
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> points_;
};

}  // namespace bernmix

#endif  // BERNMIX_DATASET_HPP
