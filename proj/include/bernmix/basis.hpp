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

#ifndef BERNMIX_BASIS_HPP
#define BERNMIX_BASIS_HPP

#include <cmath>
#include <span>
#include <vector>

#include "bernmix/beta.hpp"
#include "bernmix/degree.hpp"
#include "bernmix/errors.hpp"

namespace bernmix {

/// Log values of the tensor beta basis at one point of the unit cube:
/// entry rank(i) is sum_j log beta_{m_j i_j}(x_j). Built from d
/// per-dimension tables, so the cost is O(sum m_j) log-gamma evaluations
/// plus O(K) additions rather than O(d K) log-gamma calls. Entries are
/// -inf where the tensor density vanishes.
inline std::vector<double> log_basis_row(const DegreeVector& degrees,
                                         std::span<const double> x) {
  const std::size_t d = degrees.dimension();
  if (x.size() != d) throw domain_error("point dimension mismatch");

  std::vector<std::vector<double>> tables(d);
  for (std::size_t j = 0; j < d; ++j)
    tables[j] = beta_log_density_table(degrees[j], x[j]);

  std::vector<double> row(degrees.component_count());
  // Odometer over multi-indices with running prefix sums: prefix[j] is the
  // sum of table contributions of dimensions 0..j-1.
  std::vector<int> index(d, 0);
  std::vector<double> prefix(d + 1, 0.0);
  for (std::size_t j = 0; j < d; ++j)
    prefix[j + 1] = prefix[j] + tables[j][0];
  const std::size_t k = degrees.component_count();
  for (std::size_t rank = 0; rank < k; ++rank) {
    row[rank] = prefix[d];
    std::size_t j = d;
    while (j-- > 0) {
      if (++index[j] <= degrees[j]) break;
      index[j] = 0;
    }
    if (rank + 1 < k) {
      // indices at positions > j were reset; rebuild prefixes from j on
      for (std::size_t v = j; v < d; ++v)
        prefix[v + 1] =
            prefix[v] + tables[v][static_cast<std::size_t>(index[v])];
    }
  }
  return row;
}

/// Weighted log-sum-exp of a basis row: log sum_i p_i exp(row_i), skipping
/// zero weights. Returns -inf when every contributing term vanishes.
inline double log_mixture_from_row(std::span<const double> weights,
                                   std::span<const double> log_row) {
  if (weights.size() != log_row.size())
    throw domain_error("weight/basis length mismatch");
  double max_log = kNegInf;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0.0 && log_row[i] > max_log) max_log = log_row[i];
  if (max_log == kNegInf) return kNegInf;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0.0 && log_row[i] != kNegInf)
      acc += weights[i] * std::exp(log_row[i] - max_log);
  return max_log + std::log(acc);
}

}  // namespace bernmix

#endif  // BERNMIX_BASIS_HPP
