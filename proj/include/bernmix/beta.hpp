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

#ifndef BERNMIX_BETA_HPP
#define BERNMIX_BETA_HPP

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bernmix/errors.hpp"

namespace bernmix {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log C(n, k) via log-gamma. Stable for degrees far beyond where the
/// binomial itself overflows.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw domain_error("binomial index out of range");
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

namespace detail {

inline void check_beta_args(int i, int m, double t) {
  if (m < 0 || i < 0 || i > m)
    throw domain_error("beta basis index out of range: i=" +
                       std::to_string(i) + ", m=" + std::to_string(m));
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("beta basis argument t must be in [0, 1]");
}

/// i*log(t) with the convention 0 * log(0) = 0.
inline double xlogy(int i, double logy) {
  return i == 0 ? 0.0 : static_cast<double>(i) * logy;
}

}  // namespace detail

/// Log of the Beta(i+1, m-i+1) density at t:
///
///   log[(m+1) C(m,i) t^i (1-t)^(m-i)]
///
/// Returns -inf exactly where the density vanishes (t=0 with i>0, or t=1
/// with i<m). Everything is done through log-gamma so degrees of several
/// hundred are fine.
inline double beta_log_density(int i, int m, double t) {
  detail::check_beta_args(i, m, t);
  if (t == 0.0 && i > 0) return kNegInf;
  if (t == 1.0 && i < m) return kNegInf;
  const double logc =
      std::log(static_cast<double>(m) + 1.0) + log_binomial(m, i);
  return logc + detail::xlogy(i, std::log(t)) +
         detail::xlogy(m - i, std::log1p(-t));
}

/// Normalized beta basis density exp(beta_log_density).
inline double beta_density(int i, int m, double t) {
  const double lv = beta_log_density(i, m, t);
  return lv == kNegInf ? 0.0 : std::exp(lv);
}

/// Log-space table of beta_log_density(i, m, t) for i = 0..m.
inline std::vector<double> beta_log_density_table(int m, double t) {
  detail::check_beta_args(0, m, t);
  std::vector<double> out(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) out[static_cast<std::size_t>(i)] =
      beta_log_density(i, m, t);
  return out;
}

/// CDF of Beta(i+1, m-i+1) at t, i.e. the regularized incomplete beta
/// I_t(i+1, m-i+1). For integer shapes this is the binomial tail
///
///   sum_{k=i+1}^{m+1} C(m+1, k) t^k (1-t)^(m+1-k),
///
/// summed in log space so that large m and extreme t stay accurate.
inline double beta_cdf(int i, int m, double t) {
  detail::check_beta_args(i, m, t);
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  const int n = m + 1;
  const double lt = std::log(t);
  const double l1t = std::log1p(-t);
  // log-sum-exp over k = i+1 .. n
  double max_log = kNegInf;
  std::vector<double> logs(static_cast<std::size_t>(n - i));
  for (int k = i + 1; k <= n; ++k) {
    const double lv = log_binomial(n, k) + detail::xlogy(k, lt) +
                      detail::xlogy(n - k, l1t);
    logs[static_cast<std::size_t>(k - i - 1)] = lv;
    if (lv > max_log) max_log = lv;
  }
  if (max_log == kNegInf) return 0.0;
  double acc = 0.0;
  for (double lv : logs) acc += std::exp(lv - max_log);
  const double result = std::exp(max_log) * acc;
  return result < 1.0 ? result : 1.0;
}

/// Table of beta_cdf(i, m, t) for i = 0..m, via suffix log-sum-exp over the
/// binomial terms: O(m) instead of m calls of O(m) each. Matches beta_cdf
/// to within rounding.
inline std::vector<double> beta_cdf_table(int m, double t) {
  detail::check_beta_args(0, m, t);
  std::vector<double> out(static_cast<std::size_t>(m) + 1);
  if (t == 0.0) return out;  // all zeros
  if (t == 1.0) {
    for (double& v : out) v = 1.0;
    return out;
  }
  const int n = m + 1;
  const double lt = std::log(t);
  const double l1t = std::log1p(-t);
  // tail_log(i) = lse_{k > i} log-term(k), built back to front.
  double tail = kNegInf;
  for (int i = m; i >= 0; --i) {
    const int k = i + 1;
    const double term = log_binomial(n, k) + detail::xlogy(k, lt) +
                        detail::xlogy(n - k, l1t);
    if (term == kNegInf) {
      // nothing to add
    } else if (tail == kNegInf) {
      tail = term;
    } else if (term >= tail) {
      tail = term + std::log1p(std::exp(tail - term));
    } else {
      tail = tail + std::log1p(std::exp(term - tail));
    }
    const double v = tail == kNegInf ? 0.0 : std::exp(tail);
    out[static_cast<std::size_t>(i)] = v < 1.0 ? v : 1.0;
  }
  return out;
}

}  // namespace bernmix

#endif  // BERNMIX_BETA_HPP
