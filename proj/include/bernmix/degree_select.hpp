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

#ifndef BERNMIX_DEGREE_SELECT_HPP
#define BERNMIX_DEGREE_SELECT_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bernmix/dataset.hpp"
#include "bernmix/degree.hpp"
#include "bernmix/em.hpp"
#include "bernmix/errors.hpp"

namespace bernmix {

/// Consecutive candidate degrees base, base+1, ..., base+count.
struct CandidateGrid {
  int base = 1;
  int count = 2;

  void validate() const {
    if (base < 1) throw domain_error("candidate grid base must be >= 1");
    if (count < 2)
      throw domain_error(
          "candidate grid needs count >= 2 (the change-point statistic has "
          "no interior point otherwise)");
  }

  int candidate(int i) const { return base + i; }
};

/// Diagnostics for one dimension's degree choice.
struct DimensionSelection {
  CandidateGrid grid;
  std::vector<double> profile_logliks;  // l_0 .. l_k over the grid
  std::vector<double> stats;            // R(tau) for tau = 1 .. k-1
  int tau = 0;                          // chosen change point
  int degree = 0;                       // grid.candidate(tau)
};

/// Full per-dimension selection audit trail.
struct DegreeSelection {
  std::vector<DimensionSelection> dimensions;

  DegreeVector chosen() const {
    std::vector<int> m;
    m.reserve(dimensions.size());
    for (const auto& dim : dimensions) m.push_back(dim.degree);
    return DegreeVector(std::move(m));
  }
};

struct SelectConfig {
  /// Auto grids span [min_degree_bound, min_degree_bound + grid_count].
  int grid_count = 40;
  FitConfig fit;
};

/// Moment-based lower bound for the marginal degree:
///
///   max{1, ceil(mu (1 - mu) / sigma^2 - 3)}
///
/// with the sample mean and unbiased sample variance plugged in. A Beta
/// mixture of degree m cannot have a relative variance smaller than that of
/// a single Beta(i+1, m-i+1) component, which is where the bound comes from.
inline int min_degree_bound(std::span<const double> marginal) {
  const std::size_t n = marginal.size();
  if (n < 2) throw selection_error("degree bound needs at least two points");
  double mean = 0.0;
  for (double v : marginal) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : marginal) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n - 1);
  if (!(var > 0.0))
    throw selection_error("degenerate marginal: zero sample variance");
  // Tiny slack keeps ratios that are integers up to rounding (e.g. exact
  // Beta moments) from being ceiled one step too high.
  const double raw = mean * (1.0 - mean) / var - 3.0;
  const int bound = static_cast<int>(std::ceil(raw - 1e-9));
  return bound > 1 ? bound : 1;
}

/// Profile log-likelihoods over a candidate grid: the final fitted
/// log-likelihood of the one-dimensional model at each candidate degree.
/// Every candidate starts from the uniform initialization so candidates are
/// independent and the scan is reproducible.
inline std::vector<double> profile_logliks(std::span<const double> marginal,
                                           const CandidateGrid& grid,
                                           const FitConfig& config = {}) {
  grid.validate();
  Dataset data(marginal.size(), 1,
               std::vector<double>(marginal.begin(), marginal.end()));
  std::vector<double> ells;
  ells.reserve(static_cast<std::size_t>(grid.count) + 1);
  for (int i = 0; i <= grid.count; ++i) {
    const int m = grid.candidate(i);
    try {
      auto [p, report] = fit_fixed_degree(DegreeVector({m}), data, config);
      ells.push_back(report.final_loglik);
    } catch (const error& e) {
      throw selection_error("candidate degree " + std::to_string(m) +
                            " failed to fit: " + e.what());
    }
  }
  return ells;
}

/// Exponential change-point likelihood ratio over the log-likelihood
/// increments y_i = l_i - l_{i-1}:
///
///   R(tau) = -tau log((l_tau - l_0)/tau)
///            - (k - tau) log((l_k - l_tau)/(k - tau))
///            + k log((l_k - l_0)/k)
///
/// Conventions: a vanishing tail increment sum uses 0 log 0 = 0; a
/// nonpositive head increment sum (or negative tail) yields -inf so the
/// candidate is never selected.
inline double changepoint_stat(std::span<const double> logliks, int tau) {
  const int k = static_cast<int>(logliks.size()) - 1;
  if (k < 2) throw domain_error("change-point statistic needs k >= 2");
  if (tau < 1 || tau > k - 1)
    throw domain_error("tau must be in 1 .. k-1");
  const double head = logliks[static_cast<std::size_t>(tau)] - logliks[0];
  const double tail =
      logliks[static_cast<std::size_t>(k)] - logliks[static_cast<std::size_t>(tau)];
  const double total = logliks[static_cast<std::size_t>(k)] - logliks[0];
  if (!(head > 0.0) || tail < 0.0) return kNegInf;
  const double head_term = tau * std::log(head / tau);
  const double tail_term =
      tail > 0.0 ? (k - tau) * std::log(tail / (k - tau)) : 0.0;
  const double total_term = k * std::log(total / k);
  return -head_term - tail_term + total_term;
}

struct ChangepointChoice {
  std::vector<double> stats;  // R(tau) for tau = 1 .. k-1
  int tau = 0;
};

/// Argmax of R(tau) over the interior tau = 1 .. k-1, smallest maximizer on
/// ties (equality within 1e-9). All-degenerate statistics (every R = -inf)
/// raise a selection_error.
inline ChangepointChoice choose_changepoint(
    std::span<const double> logliks) {
  const int k = static_cast<int>(logliks.size()) - 1;
  if (k < 2) throw domain_error("change-point choice needs k >= 2");
  ChangepointChoice out;
  out.stats.reserve(static_cast<std::size_t>(k) - 1);
  double best = kNegInf;
  for (int tau = 1; tau <= k - 1; ++tau) {
    const double r = changepoint_stat(logliks, tau);
    out.stats.push_back(r);
    if (r > best) best = r;
  }
  if (best == kNegInf)
    throw selection_error(
        "no informative change point (all R(tau) degenerate); widen the "
        "candidate grid");
  constexpr double kTieTol = 1e-9;
  for (int tau = 1; tau <= k - 1; ++tau) {
    if (out.stats[static_cast<std::size_t>(tau) - 1] >= best - kTieTol) {
      out.tau = tau;
      break;
    }
  }
  return out;
}

/// Change-point choice over one dimension: fit the profile log-likelihoods,
/// then pick tau by choose_changepoint. The chosen degree is the candidate
/// at tau.
inline DimensionSelection select_degree(std::span<const double> marginal,
                                        const CandidateGrid& grid,
                                        const FitConfig& config = {}) {
  DimensionSelection out;
  out.grid = grid;
  out.profile_logliks = profile_logliks(marginal, grid, config);
  ChangepointChoice choice = choose_changepoint(out.profile_logliks);
  out.stats = std::move(choice.stats);
  out.tau = choice.tau;
  out.degree = grid.candidate(choice.tau);
  return out;
}

/// Per-dimension degree selection. With explicit grids there must be one
/// grid per dimension; otherwise each dimension's grid starts at its moment
/// lower bound and spans config.grid_count candidates.
inline DegreeSelection select_degrees(
    const Dataset& data, const SelectConfig& config = {},
    const std::vector<CandidateGrid>& grids = {}) {
  if (!grids.empty() && grids.size() != data.dimension())
    throw domain_error("one candidate grid per dimension required");
  DegreeSelection out;
  out.dimensions.reserve(data.dimension());
  for (std::size_t j = 0; j < data.dimension(); ++j) {
    const std::vector<double> marginal = data.column(j);
    try {
      CandidateGrid grid;
      if (grids.empty()) {
        grid.base = min_degree_bound(marginal);
        grid.count = config.grid_count;
      } else {
        grid = grids[j];
      }
      out.dimensions.push_back(select_degree(marginal, grid, config.fit));
    } catch (const error& e) {
      throw selection_error("dimension " + std::to_string(j) + ": " +
                            e.what());
    }
  }
  return out;
}

}  // namespace bernmix

#endif  // BERNMIX_DEGREE_SELECT_HPP
