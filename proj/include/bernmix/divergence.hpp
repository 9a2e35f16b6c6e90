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

#ifndef BERNMIX_DIVERGENCE_HPP
#define BERNMIX_DIVERGENCE_HPP

#include <functional>
#include <span>
#include <string>

#include "bernmix/errors.hpp"
#include "bernmix/model.hpp"
#include "bernmix/quadrature.hpp"

namespace bernmix {

/// A reference density evaluated at points of the model's support box.
using DensityCallback = std::function<double(std::span<const double>)>;

/// Chi-square divergence between the model density and a reference density:
///
///   D^2 = integral over the support of (f_m - f)^2 / f
///
/// approximated by tensor Gauss-Legendre quadrature (nodes are strictly
/// interior, so boundary zeros of f are tolerated). The reference must be
/// strictly positive at every node; a nonpositive value raises an
/// evaluation_error naming the node.
inline double chisq_divergence(const BernsteinModel& model,
                               const DensityCallback& truth,
                               int nodes_per_axis = 64) {
  return integrate_box(
      model.support(), nodes_per_axis, [&](std::span<const double> y) {
        const double f = truth(y);
        if (!(f > 0.0)) {
          std::string where = "(";
          for (std::size_t j = 0; j < y.size(); ++j)
            where += (j ? ", " : "") + std::to_string(y[j]);
          throw evaluation_error(
              "reference density is nonpositive at quadrature node " + where +
              ")");
        }
        const double g = model.density(y);
        const double diff = g - f;
        return diff * diff / f;
      });
}

}  // namespace bernmix

#endif  // BERNMIX_DIVERGENCE_HPP
