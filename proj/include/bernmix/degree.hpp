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

#ifndef BERNMIX_DEGREE_HPP
#define BERNMIX_DEGREE_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bernmix/errors.hpp"

namespace bernmix {

/// Per-dimension polynomial degrees m = (m_1, ..., m_d). The number of
/// mixture components is K = prod(m_j + 1).
///
/// Coefficient vectors are flattened in lexicographic order of the multi-index
/// (i_1, ..., i_d) with the LAST index varying fastest:
///
///   rank(i) = i_d + (m_d + 1) * (i_{d-1} + (m_{d-1} + 1) * (...))
///
/// This ordering is part of the model file format and must not change.
class DegreeVector {
 public:
  explicit DegreeVector(std::vector<int> degrees)
      : degrees_(std::move(degrees)) {
    if (degrees_.empty()) throw domain_error("degree vector must have d >= 1");
    std::int64_t k = 1;
    for (int m : degrees_) {
      if (m < 0) throw domain_error("degrees must be nonnegative");
      k *= static_cast<std::int64_t>(m) + 1;
      if (k > (std::int64_t{1} << 31))
        throw domain_error("component count K exceeds 2^31");
    }
    component_count_ = k;
  }

  DegreeVector(std::initializer_list<int> degrees)
      : DegreeVector(std::vector<int>(degrees)) {}

  std::size_t dimension() const { return degrees_.size(); }
  int operator[](std::size_t j) const { return degrees_[j]; }
  const std::vector<int>& values() const { return degrees_; }

  /// K = prod(m_j + 1).
  std::size_t component_count() const {
    return static_cast<std::size_t>(component_count_);
  }

  /// Lexicographic rank of a multi-index (last index fastest).
  std::size_t rank(std::span<const int> index) const {
    if (index.size() != degrees_.size())
      throw domain_error("multi-index dimension mismatch");
    std::size_t r = 0;
    for (std::size_t j = 0; j < degrees_.size(); ++j) {
      if (index[j] < 0 || index[j] > degrees_[j])
        throw domain_error("multi-index component out of range");
      r = r * static_cast<std::size_t>(degrees_[j] + 1) +
          static_cast<std::size_t>(index[j]);
    }
    return r;
  }

  /// Inverse of rank().
  std::vector<int> unrank(std::size_t rank) const {
    if (rank >= component_count())
      throw domain_error("rank out of range");
    std::vector<int> index(degrees_.size());
    for (std::size_t j = degrees_.size(); j-- > 0;) {
      const std::size_t width = static_cast<std::size_t>(degrees_[j]) + 1;
      index[j] = static_cast<int>(rank % width);
      rank /= width;
    }
    return index;
  }

  bool operator==(const DegreeVector& other) const {
    return degrees_ == other.degrees_;
  }

 private:
  std::vector<int> degrees_;
  std::int64_t component_count_ = 0;
};

/// Visits all multi-indices 0 <= i <= m in rank order, i.e. with the last
/// index advancing fastest. `f(rank, index)` is called K times.
template <typename F>
void for_each_multi_index(const DegreeVector& degrees, F&& f) {
  const std::size_t d = degrees.dimension();
  std::vector<int> index(d, 0);
  const std::size_t k = degrees.component_count();
  for (std::size_t rank = 0; rank < k; ++rank) {
    f(rank, std::span<const int>(index));
    for (std::size_t j = d; j-- > 0;) {
      if (++index[j] <= degrees[j]) break;
      index[j] = 0;
    }
  }
}

}  // namespace bernmix

#endif  // BERNMIX_DEGREE_HPP
