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

#ifndef BERNMIX_EM_HPP
#define BERNMIX_EM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bernmix/basis.hpp"
#include "bernmix/dataset.hpp"
#include "bernmix/degree.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/simplex.hpp"

namespace bernmix {

/// Fitting controls. The stopping rule is a relative change in the
/// log-likelihood: |l_{s+1} - l_s| <= tol * (1 + |l_s|).
struct FitConfig {
  double tol = 1e-7;
  int max_iters = 50000;
  /// Transformed data is clamped into [boundary_eps, 1 - boundary_eps]
  /// before fitting; exact 0/1 coordinates would zero out every interior
  /// component's likelihood.
  double boundary_eps = 1e-10;
  /// Starting coefficients; empty means uniform 1/K. Note the EM update
  /// never revives a zero weight, so supplying zeros pins those components.
  std::optional<std::vector<double>> init;

  enum class BasisMode { kAuto, kCached, kStreaming };
  /// kCached precomputes the n x K basis matrix; kStreaming recomputes rows
  /// on the fly in O(K) memory. Results are bit-identical; kAuto picks by
  /// the cache_limit.
  BasisMode basis_mode = BasisMode::kAuto;
  std::size_t cache_limit = std::size_t{1} << 27;  // ~1 GiB of doubles

  void validate() const {
    if (!(tol > 0.0)) throw domain_error("fit tolerance must be positive");
    if (max_iters < 1) throw domain_error("max_iters must be >= 1");
    if (!(boundary_eps >= 0.0 && boundary_eps < 0.5))
      throw domain_error("boundary_eps must be in [0, 0.5)");
  }
};

/// Outcome of one fit: full log-likelihood trace (one entry per evaluated
/// iterate, starting at the initial coefficients), iteration count,
/// convergence flag.
struct FitReport {
  std::vector<double> loglik_trace;
  int iterations = 0;
  bool converged = false;
  double final_loglik = 0.0;
  /// Set when n < K - 1: the likelihood is no longer strictly concave with
  /// probability one, so the maximizer may not be unique.
  bool n_below_recommended = false;
};

namespace detail {

/// Rows are processed in a canonical order (lexicographic by coordinates)
/// so that every reduction over observations is invariant under permutations
/// of the input rows, bit for bit. Duplicate rows contribute identical
/// terms, so their relative order does not matter.
inline std::vector<std::size_t> canonical_row_order(const Dataset& data) {
  std::vector<std::size_t> perm(data.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    const auto ra = data.row(a);
    const auto rb = data.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(),
                                        rb.end());
  });
  return perm;
}

/// Per-observation basis row in max-shifted form: scaled[i] =
/// exp(log_row[i] - row_max). The shift is independent of the weights, so
/// one cached row serves every EM iteration; mixture values are recovered
/// as exp(row_max) * sum_i p_i scaled[i], which is log-sum-exp arithmetic
/// factored per row.
inline double shift_row(std::span<const double> log_row,
                        std::span<double> scaled) {
  double row_max = kNegInf;
  for (double v : log_row) row_max = std::max(row_max, v);
  for (std::size_t i = 0; i < log_row.size(); ++i)
    scaled[i] = log_row[i] == kNegInf ? 0.0 : std::exp(log_row[i] - row_max);
  return row_max;
}

/// Basis rows for a dataset, either precomputed or recomputed per visit.
/// Both paths produce identical values in identical order.
class BasisSource {
 public:
  BasisSource(const DegreeVector& degrees, const Dataset& data,
              std::vector<std::size_t> order, bool cached)
      : degrees_(degrees),
        data_(data),
        order_(std::move(order)),
        cached_(cached),
        k_(degrees.component_count()) {
    if (cached_) {
      rows_.resize(order_.size() * k_);
      row_max_.resize(order_.size());
      for (std::size_t j = 0; j < order_.size(); ++j) {
        const std::vector<double> log_row =
            log_basis_row(degrees_, data_.row(order_[j]));
        row_max_[j] = shift_row(
            log_row, std::span<double>(rows_.data() + j * k_, k_));
      }
    } else {
      scratch_.resize(k_);
    }
  }

  std::size_t rows() const { return order_.size(); }
  std::size_t components() const { return k_; }
  std::size_t original_index(std::size_t j) const { return order_[j]; }

  /// Scaled basis values of visit-row j; `row_max` receives the shift.
  std::span<const double> row(std::size_t j, double& row_max) {
    if (cached_) {
      row_max = row_max_[j];
      return std::span<const double>(rows_.data() + j * k_, k_);
    }
    const std::vector<double> log_row =
        log_basis_row(degrees_, data_.row(order_[j]));
    row_max = shift_row(log_row, scratch_);
    return scratch_;
  }

 private:
  const DegreeVector& degrees_;
  const Dataset& data_;
  std::vector<std::size_t> order_;
  bool cached_;
  std::size_t k_;
  std::vector<double> rows_;
  std::vector<double> row_max_;
  std::vector<double> scratch_;
};

/// One sweep over the data: log-likelihood of `p` and, if `acc` is given,
/// the responsibility sums acc[l] = sum_j scaled_jl / denom_j needed for the
/// next EM iterate. Throws fit_error naming the (original) observation when
/// an observation has zero mixture density.
inline double em_sweep(BasisSource& basis, std::span<const double> p,
                       std::vector<double>* acc) {
  const std::size_t k = basis.components();
  if (acc) std::fill(acc->begin(), acc->end(), 0.0);
  double loglik = 0.0;
  for (std::size_t j = 0; j < basis.rows(); ++j) {
    double row_max = 0.0;
    const std::span<const double> scaled = basis.row(j, row_max);
    double denom = 0.0;
    for (std::size_t l = 0; l < k; ++l) denom += p[l] * scaled[l];
    if (!(denom > 0.0) || row_max == kNegInf)
      throw fit_error(
          "observation " + std::to_string(basis.original_index(j)) +
          " has zero mixture density under the current coefficients");
    loglik += std::log(denom) + row_max;
    if (acc) {
      const double inv = 1.0 / denom;
      std::vector<double>& a = *acc;
      for (std::size_t l = 0; l < k; ++l) a[l] += scaled[l] * inv;
    }
  }
  return loglik;
}

/// p'(l) = p(l) * acc(l) / n, renormalized onto the simplex with a
/// compensated sum so that large K does not erode the simplex invariant.
inline void em_update(std::span<const double> p,
                      std::span<const double> acc, double n,
                      std::vector<double>& next) {
  for (std::size_t l = 0; l < p.size(); ++l) next[l] = p[l] * acc[l] / n;
  const double sum = stable_sum(next);
  for (double& v : next) v /= sum;
}

inline bool use_cache(const FitConfig& config, std::size_t n, std::size_t k) {
  switch (config.basis_mode) {
    case FitConfig::BasisMode::kCached:
      return true;
    case FitConfig::BasisMode::kStreaming:
      return false;
    case FitConfig::BasisMode::kAuto:
    default:
      return n * k <= config.cache_limit;
  }
}

inline void check_em_inputs(const DegreeVector& degrees,
                            const Dataset& data) {
  if (data.dimension() != degrees.dimension())
    throw domain_error("data/degrees dimension mismatch");
  if (data.size() == 0) throw domain_error("fit requires at least one row");
  if (!data.in_unit_cube())
    throw domain_error("data must lie in the unit cube; transform it first");
}

}  // namespace detail

/// Approximate Bernstein log-likelihood of coefficients p for data on the
/// unit cube: sum_k log f_m(x_k; p). Returns -inf when some observation has
/// zero mixture density under p.
inline double log_likelihood(const DegreeVector& degrees,
                             const MixtureCoefficients& p,
                             const Dataset& data) {
  detail::check_em_inputs(degrees, data);
  if (p.size() != degrees.component_count())
    throw domain_error("coefficient length does not match K of degrees");
  detail::BasisSource basis(degrees, data, detail::canonical_row_order(data),
                            detail::use_cache(FitConfig{}, data.size(),
                                              p.size()));
  try {
    return detail::em_sweep(basis, p.span(), nullptr);
  } catch (const fit_error&) {
    return kNegInf;
  }
}

/// One EM iteration:
///
///   p'(l) = (1/n) sum_j p(l) beta_{m,l}(x_j) / sum_i p(i) beta_{m,i}(x_j)
///
/// computed with max-shifted (log-space) responsibilities. The output is on
/// the simplex, zero weights stay zero, and the log-likelihood never
/// decreases. Throws fit_error naming the observation if some x_j has zero
/// mixture density under p.
inline MixtureCoefficients em_step(const DegreeVector& degrees,
                                   const MixtureCoefficients& p,
                                   const Dataset& data) {
  detail::check_em_inputs(degrees, data);
  if (p.size() != degrees.component_count())
    throw domain_error("coefficient length does not match K of degrees");
  detail::BasisSource basis(degrees, data, detail::canonical_row_order(data),
                            detail::use_cache(FitConfig{}, data.size(),
                                              p.size()));
  std::vector<double> acc(p.size());
  detail::em_sweep(basis, p.span(), &acc);
  std::vector<double> next(p.size());
  detail::em_update(p.span(), acc, static_cast<double>(data.size()), next);
  return MixtureCoefficients(std::move(next));
}

/// Runs the EM iteration from config.init (uniform by default) until the
/// relative log-likelihood change drops below config.tol or max_iters is
/// reached. Deterministic given its inputs. The returned coefficients are
/// the iterate whose log-likelihood equals report.final_loglik (the last
/// trace entry); report.loglik_trace has iterations + 1 entries starting at
/// the initial coefficients.
inline std::pair<MixtureCoefficients, FitReport> fit_fixed_degree(
    const DegreeVector& degrees, const Dataset& data,
    const FitConfig& config = {}) {
  config.validate();
  detail::check_em_inputs(degrees, data);
  const std::size_t k = degrees.component_count();

  const Dataset clamped = data.clamped_to_unit(config.boundary_eps);
  detail::BasisSource basis(
      degrees, clamped, detail::canonical_row_order(clamped),
      detail::use_cache(config, clamped.size(), k));

  std::vector<double> p;
  if (config.init) {
    p = MixtureCoefficients(*config.init).values();
    if (p.size() != k)
      throw domain_error("init coefficient length does not match K");
  } else {
    p = MixtureCoefficients::uniform(k).values();
  }

  FitReport report;
  report.n_below_recommended = data.size() + 1 < k;  // n < K - 1

  std::vector<double> acc(k), next(k);
  const double n = static_cast<double>(clamped.size());
  for (int s = 0;; ++s) {
    const double ell = detail::em_sweep(basis, p, &acc);
    report.loglik_trace.push_back(ell);
    report.iterations = s;
    if (s >= 1) {
      const double prev = report.loglik_trace[static_cast<std::size_t>(s) - 1];
      if (std::abs(ell - prev) <= config.tol * (1.0 + std::abs(prev))) {
        report.converged = true;
        break;
      }
    }
    if (s >= config.max_iters) break;
    detail::em_update(p, acc, n, next);
    p.swap(next);
  }
  report.final_loglik = report.loglik_trace.back();
  return {MixtureCoefficients(std::move(p)), std::move(report)};
}

}  // namespace bernmix

#endif  // BERNMIX_EM_HPP
