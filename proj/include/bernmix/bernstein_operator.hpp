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

#ifndef BERNMIX_BERNSTEIN_OPERATOR_HPP
#define BERNMIX_BERNSTEIN_OPERATOR_HPP

#include <cmath>
#include <span>
#include <vector>

#include "bernmix/beta.hpp"
#include "bernmix/degree.hpp"
#include "bernmix/errors.hpp"

namespace bernmix {

/// Unnormalized Bernstein kernel C(m,i) t^i (1-t)^(m-i) for i = 0..m.
/// Values lie in [0, 1] and sum to 1 over i (binomial probabilities), so a
/// linear-space table is safe at any degree.
inline std::vector<double> bernstein_kernel_table(int m, double t) {
  if (m < 0) throw domain_error("degree must be nonnegative");
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("kernel argument t must be in [0, 1]");
  std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
  if (t == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (t == 1.0) {
    out[static_cast<std::size_t>(m)] = 1.0;
    return out;
  }
  const double lt = std::log(t);
  const double l1t = std::log1p(-t);
  for (int i = 0; i <= m; ++i)
    out[static_cast<std::size_t>(i)] = std::exp(
        log_binomial(m, i) + static_cast<double>(i) * lt +
        static_cast<double>(m - i) * l1t);
  return out;
}

/// Classical multivariate Bernstein operator
///
///   B^f_m(x) = sum_i f(i_1/m_1, ..., i_d/m_d) prod_j C(m_j,i_j) x^i (1-x)^...
///
/// applied to a callback f on the unit cube. Reproduces constants exactly
/// (the kernels form a partition of unity) and linear functions for d = 1.
/// A zero degree m_j = 0 uses the single node 0 in that dimension.
///
/// This is the approximation-theoretic operator, kept as an oracle for the
/// mixture model's behavior; note it deliberately uses the unnormalized
/// kernel b, not the beta density (m+1) * b.
template <typename F>
double classical_bernstein_operator(F&& f, const DegreeVector& degrees,
                                    std::span<const double> x) {
  const std::size_t d = degrees.dimension();
  if (x.size() != d) throw domain_error("point dimension mismatch");
  std::vector<std::vector<double>> kernels(d);
  std::vector<std::vector<double>> nodes(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!(x[j] >= 0.0 && x[j] <= 1.0))
      throw domain_error("operator argument outside the unit cube");
    const int m = degrees[j];
    kernels[j] = bernstein_kernel_table(m, x[j]);
    nodes[j].resize(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i)
      nodes[j][static_cast<std::size_t>(i)] =
          m == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(m);
  }
  double acc = 0.0;
  std::vector<double> node_point(d);
  for_each_multi_index(degrees, [&](std::size_t, std::span<const int> index) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t i = static_cast<std::size_t>(index[j]);
      w *= kernels[j][i];
      node_point[j] = nodes[j][i];
    }
    if (w != 0.0) acc += w * f(std::span<const double>(node_point));
  });
  return acc;
}

}  // namespace bernmix

#endif  // BERNMIX_BERNSTEIN_OPERATOR_HPP
