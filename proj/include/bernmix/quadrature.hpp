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

#ifndef BERNMIX_QUADRATURE_HPP
#define BERNMIX_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "bernmix/errors.hpp"
#include "bernmix/support.hpp"

namespace bernmix {

/// Nodes and weights on [0, 1]. An n-point Gauss-Legendre rule integrates
/// polynomials of degree <= 2n-1 exactly; the 64-point default elsewhere in
/// the library covers basis degrees up to 127 per axis.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n points, mapped to [0, 1]. Roots of the
/// Legendre polynomial are found by Newton iteration from the Chebyshev
/// initial guesses; converges to machine precision in a handful of steps.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw domain_error("quadrature rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double pi = 3.141592653589793238462643383279502884;
  // Roots come in +/- pairs on [-1, 1]; solve for the first half.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: evaluates P_n(x) and P'_n(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 =
            ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]; x is the larger root of the pair
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
    rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
  return rule;
}

/// Tensor-product integral of f over a box. `f` receives a point of the
/// box's dimension; nodes_per_axis Gauss-Legendre points are used per axis.
template <typename F>
double integrate_box(const SupportBox& box, int nodes_per_axis, F&& f) {
  const std::size_t d = box.dimension();
  const QuadratureRule rule = gauss_legendre(nodes_per_axis);
  const std::size_t r = rule.size();

  std::vector<std::vector<double>> axis_nodes(d), axis_weights(d);
  for (std::size_t j = 0; j < d; ++j) {
    axis_nodes[j].resize(r);
    axis_weights[j].resize(r);
    for (std::size_t q = 0; q < r; ++q) {
      axis_nodes[j][q] = box.lower()[j] + box.width(j) * rule.nodes[q];
      axis_weights[j][q] = box.width(j) * rule.weights[q];
    }
  }

  std::vector<std::size_t> idx(d, 0);
  std::vector<double> point(d);
  double total = 0.0;
  std::size_t cells = 1;
  for (std::size_t j = 0; j < d; ++j) cells *= r;
  for (std::size_t c = 0; c < cells; ++c) {
    double w = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      point[j] = axis_nodes[j][idx[j]];
      w *= axis_weights[j][idx[j]];
    }
    total += w * f(std::span<const double>(point));
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < r) break;
      idx[j] = 0;
    }
  }
  return total;
}

/// One-dimensional convenience overload on [lo, hi].
template <typename F>
double integrate_interval(double lo, double hi, int nodes, F&& f) {
  SupportBox box({lo}, {hi});
  return integrate_box(box, nodes,
                       [&](std::span<const double> p) { return f(p[0]); });
}

}  // namespace bernmix

#endif  // BERNMIX_QUADRATURE_HPP
