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

#ifndef BERNMIX_SIMBENCH_HPP
#define BERNMIX_SIMBENCH_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bernmix/dataset.hpp"
#include "bernmix/degree_select.hpp"
#include "bernmix/divergence.hpp"
#include "bernmix/em.hpp"
#include "bernmix/errors.hpp"
#include "bernmix/model.hpp"
#include "bernmix/quadrature.hpp"
#include "bernmix/rng.hpp"

namespace bernmix {

/// The benchmark's bivariate target distributions on [0,1]^2.
enum class TargetKind {
  kBetaProduct,      // beta(x1; 7,7) * beta(x2; 5,5)
  kTruncatedNormal,  // N((.5,.5), 0.125^2 [[1,.1],[.1,1]]) truncated to the square
  kNormalMixture,    // .3 N((.3,.3), .065^2 I) + .7 N((.7,.7), .065^2 I), truncated
  kPower88,          // 4.5 (x1^8 + x2^8)
  kUserModel,        // a BernsteinModel on the unit square
};

/// A simulation target: exact density on the unit square plus a sampler.
/// Truncated kinds are renormalized by their in-square mass (computed once
/// by quadrature) so the density is a true density on [0,1]^2; at the
/// benchmark parameters the correction is below 1e-4.
class TargetDistribution {
 public:
  static TargetDistribution beta_product() {
    TargetDistribution t(TargetKind::kBetaProduct, "beta");
    t.check_normalization();
    return t;
  }

  static TargetDistribution truncated_normal() {
    TargetDistribution t(TargetKind::kTruncatedNormal, "normal");
    t.mass_ = t.box_mass();
    t.check_normalization();
    return t;
  }

  static TargetDistribution normal_mixture() {
    TargetDistribution t(TargetKind::kNormalMixture, "mn");
    t.mass_ = t.box_mass();
    t.check_normalization();
    return t;
  }

  static TargetDistribution power88() {
    TargetDistribution t(TargetKind::kPower88, "p88");
    t.check_normalization();
    return t;
  }

  static TargetDistribution user_model(BernsteinModel model) {
    if (model.dimension() != 2 || !model.support().is_unit())
      throw domain_error("user target must be a model on the unit square");
    TargetDistribution t(TargetKind::kUserModel, "user");
    t.model_ = std::make_shared<BernsteinModel>(std::move(model));
    t.check_normalization();
    return t;
  }

  TargetKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Exact density at (x1, x2) in [0,1]^2.
  double density(double x1, double x2) const {
    switch (kind_) {
      case TargetKind::kBetaProduct:
        return beta_density(6, 12, x1) * beta_density(4, 8, x2);
      case TargetKind::kTruncatedNormal:
        return normal_pdf(x1, x2) / mass_;
      case TargetKind::kNormalMixture:
        return mixture_pdf(x1, x2) / mass_;
      case TargetKind::kPower88:
        return 4.5 * (std::pow(x1, 8) + std::pow(x2, 8));
      case TargetKind::kUserModel: {
        const double pt[2] = {x1, x2};
        return model_->density(std::span<const double>(pt, 2));
      }
    }
    throw domain_error("unknown target kind");
  }

  DensityCallback callback() const {
    TargetDistribution copy = *this;
    return [copy](std::span<const double> y) {
      return copy.density(y[0], y[1]);
    };
  }

  /// n i.i.d. draws, deterministic per seed. Gaussian kinds use rejection
  /// into the unit square; an acceptance rate below 1e-3 aborts.
  Dataset sample(std::size_t n, std::uint64_t seed) const {
    if (kind_ == TargetKind::kUserModel) return model_->sample(n, seed);
    Rng rng(seed);
    std::vector<double> out(n * 2);
    std::uint64_t attempts = 0;
    for (std::size_t s = 0; s < n; ++s) {
      double x1 = 0.0, x2 = 0.0;
      switch (kind_) {
        case TargetKind::kBetaProduct:
          x1 = rng.beta_int(7, 7);
          x2 = rng.beta_int(5, 5);
          break;
        case TargetKind::kPower88: {
          // exact mixture form: pick a component with probability 1/2, give
          // it a Beta(9,1) coordinate (inverse CDF u^(1/9)), the other is
          // uniform
          const bool first = rng.uniform() < 0.5;
          const double powered = std::pow(rng.uniform_pos(), 1.0 / 9.0);
          const double flat = rng.uniform();
          x1 = first ? powered : flat;
          x2 = first ? flat : powered;
          break;
        }
        case TargetKind::kTruncatedNormal:
        case TargetKind::kNormalMixture: {
          for (;;) {
            ++attempts;
            if (attempts > 1000 && attempts > 1000 * (s + 1))
              throw evaluation_error(
                  "rejection sampling acceptance rate below 1e-3");
            double y1, y2;
            if (kind_ == TargetKind::kTruncatedNormal) {
              const double z1 = rng.normal();
              const double z2 = rng.normal();
              // Cholesky of 0.125^2 [[1, .1], [.1, 1]]
              y1 = 0.5 + 0.125 * z1;
              y2 = 0.5 + 0.125 * (0.1 * z1 + 0.99498743710661995473 * z2);
            } else {
              const bool second = rng.uniform() >= 0.3;
              const double mu = second ? 0.7 : 0.3;
              y1 = mu + 0.065 * rng.normal();
              y2 = mu + 0.065 * rng.normal();
            }
            if (y1 >= 0.0 && y1 <= 1.0 && y2 >= 0.0 && y2 <= 1.0) {
              x1 = y1;
              x2 = y2;
              break;
            }
          }
          break;
        }
        case TargetKind::kUserModel:
          break;  // handled above
      }
      out[2 * s] = x1;
      out[2 * s + 1] = x2;
    }
    return Dataset(n, 2, std::move(out));
  }

 private:
  TargetDistribution(TargetKind kind, std::string name)
      : kind_(kind), name_(std::move(name)) {}

  static double normal_pdf(double x1, double x2) {
    // N((.5,.5), Sigma), Sigma = 0.125^2 [[1, .1], [.1, 1]]
    const double s2 = 0.125 * 0.125;
    const double rho = 0.1;
    const double det = s2 * s2 * (1.0 - rho * rho);
    const double dx = x1 - 0.5, dy = x2 - 0.5;
    const double q =
        (dx * dx - 2.0 * rho * dx * dy + dy * dy) / (s2 * (1.0 - rho * rho));
    const double two_pi = 6.283185307179586476925286766559;
    return std::exp(-0.5 * q) / (two_pi * std::sqrt(det));
  }

  static double mixture_pdf(double x1, double x2) {
    const double s = 0.065;
    const double two_pi = 6.283185307179586476925286766559;
    auto comp = [&](double mu) {
      const double dx = x1 - mu, dy = x2 - mu;
      return std::exp(-0.5 * (dx * dx + dy * dy) / (s * s)) /
             (two_pi * s * s);
    };
    return 0.3 * comp(0.3) + 0.7 * comp(0.7);
  }

  double box_mass() const {
    return integrate_box(SupportBox::unit(2), 128,
                         [&](std::span<const double> p) {
                           return kind_ == TargetKind::kTruncatedNormal
                                      ? normal_pdf(p[0], p[1])
                                      : mixture_pdf(p[0], p[1]);
                         });
  }

  void check_normalization() const {
    const double total = integrate_box(
        SupportBox::unit(2), 128,
        [&](std::span<const double> p) { return density(p[0], p[1]); });
    if (std::abs(total - 1.0) > 1e-6)
      throw evaluation_error("target density does not integrate to 1: " +
                             std::to_string(total));
  }

  TargetKind kind_;
  std::string name_;
  double mass_ = 1.0;
  std::shared_ptr<const BernsteinModel> model_;
};

/// Integrated squared error between two densities on the unit square by
/// tensor Gauss-Legendre quadrature. Symmetric in its two arguments.
template <typename F, typename G>
double ise_callbacks(F&& f, G&& g, int nodes_per_axis = 128) {
  return integrate_box(SupportBox::unit(2), nodes_per_axis,
                       [&](std::span<const double> p) {
                         const double diff =
                             f(p[0], p[1]) - g(p[0], p[1]);
                         return diff * diff;
                       });
}

/// ISE of a fitted model on the unit square against the exact density. The
/// model's basis is tabulated per axis once, so the grid evaluation costs
/// O(r K) rather than O(r^2 K).
template <typename G>
double ise(const BernsteinModel& model, G&& truth, int nodes_per_axis = 128) {
  if (model.dimension() != 2 || !model.support().is_unit())
    throw domain_error("ise expects a model on the unit square");
  const QuadratureRule rule = gauss_legendre(nodes_per_axis);
  const int m1 = model.degrees()[0];
  const int m2 = model.degrees()[1];
  const std::size_t r = rule.size();
  // per-axis basis tables at the quadrature nodes
  std::vector<double> t1(r * static_cast<std::size_t>(m1 + 1));
  std::vector<double> t2(r * static_cast<std::size_t>(m2 + 1));
  for (std::size_t q = 0; q < r; ++q) {
    for (int i = 0; i <= m1; ++i)
      t1[q * (m1 + 1) + i] = beta_density(i, m1, rule.nodes[q]);
    for (int i = 0; i <= m2; ++i)
      t2[q * (m2 + 1) + i] = beta_density(i, m2, rule.nodes[q]);
  }
  const auto& p = model.coefficients();
  // row pass: v[i2] = sum_{i1} p(i1,i2) t1[q1,i1], then dot with t2 rows
  std::vector<double> v(static_cast<std::size_t>(m2 + 1));
  double total = 0.0;
  for (std::size_t q1 = 0; q1 < r; ++q1) {
    std::fill(v.begin(), v.end(), 0.0);
    for (int i1 = 0; i1 <= m1; ++i1) {
      const double b1 = t1[q1 * (m1 + 1) + i1];
      if (b1 == 0.0) continue;
      const std::size_t offset = static_cast<std::size_t>(i1) * (m2 + 1);
      for (int i2 = 0; i2 <= m2; ++i2)
        v[static_cast<std::size_t>(i2)] += p[offset + i2] * b1;
    }
    for (std::size_t q2 = 0; q2 < r; ++q2) {
      double fhat = 0.0;
      for (int i2 = 0; i2 <= m2; ++i2)
        fhat += v[static_cast<std::size_t>(i2)] * t2[q2 * (m2 + 1) + i2];
      const double diff = fhat - truth(rule.nodes[q1], rule.nodes[q2]);
      total += rule.weights[q1] * rule.weights[q2] * diff * diff;
    }
  }
  return total;
}

/// Monte Carlo study configuration; per-run seeds are derived from the
/// master seed by run index, so runs are independent of execution order.
struct StudyConfig {
  std::size_t n = 100;
  int runs = 100;
  std::uint64_t seed = 0;
  int grid_count = 40;
  int ise_nodes = 128;
  FitConfig fit;
  int threads = 1;
};

/// Aggregated study outcome; per-run values retained for auditing.
struct StudyResult {
  std::string target;
  std::size_t n = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  std::vector<double> mean_degree;              // per dimension
  std::vector<double> sd_degree;                // per dimension (runs >= 2)
  double mise_x100 = 0.0;
  std::optional<double> sd_ise_x100;
  std::vector<double> ise_values;               // per successful run
  std::vector<std::vector<int>> degrees;        // per successful run
  int failures = 0;
  double elapsed_seconds = 0.0;
};

namespace detail {

struct RunOutcome {
  bool ok = false;
  double ise_value = 0.0;
  std::vector<int> degrees;
};

inline RunOutcome run_once(const TargetDistribution& target,
                           const StudyConfig& config, int run_index) {
  RunOutcome out;
  const std::uint64_t run_seed =
      derive_seed(config.seed, static_cast<std::uint64_t>(run_index));
  const Dataset data = target.sample(config.n, run_seed);
  SelectConfig select;
  select.grid_count = config.grid_count;
  select.fit = config.fit;
  const DegreeSelection selection = select_degrees(data, select);
  const DegreeVector chosen = selection.chosen();
  auto [p, report] = fit_fixed_degree(chosen, data, config.fit);
  BernsteinModel model(chosen, std::move(p), SupportBox::unit(2));
  out.ise_value = ise(
      model, [&](double a, double b) { return target.density(a, b); },
      config.ise_nodes);
  out.degrees = chosen.values();
  out.ok = true;
  return out;
}

}  // namespace detail

/// Runs the full pipeline (sample, select degrees, fit, ISE) `runs` times
/// and aggregates. Individual run failures are recorded and excluded; more
/// than 10% failures aborts the study. Results are identical for any thread
/// count: each run is seeded by its index and aggregation is in index order.
inline StudyResult run_study(const TargetDistribution& target,
                             const StudyConfig& config) {
  if (config.runs < 1) throw domain_error("study needs runs >= 1");
  const auto t_start = std::chrono::steady_clock::now();

  std::vector<detail::RunOutcome> outcomes(
      static_cast<std::size_t>(config.runs));
  std::vector<std::string> errors(static_cast<std::size_t>(config.runs));

  const int threads =
      std::max(1, std::min(config.threads, config.runs));
  if (threads == 1) {
    for (int r = 0; r < config.runs; ++r) {
      try {
        outcomes[static_cast<std::size_t>(r)] =
            detail::run_once(target, config, r);
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(r)] = e.what();
      }
    }
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= config.runs) return;
        try {
          outcomes[static_cast<std::size_t>(r)] =
              detail::run_once(target, config, r);
        } catch (const std::exception& e) {
          errors[static_cast<std::size_t>(r)] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  StudyResult result;
  result.target = target.name();
  result.n = config.n;
  result.runs = config.runs;
  result.seed = config.seed;
  for (int r = 0; r < config.runs; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    if (!o.ok) {
      ++result.failures;
      continue;
    }
    result.ise_values.push_back(o.ise_value);
    result.degrees.push_back(o.degrees);
  }
  if (result.failures * 10 > config.runs)
    throw fit_error("more than 10% of study runs failed (" +
                    std::to_string(result.failures) + "/" +
                    std::to_string(config.runs) + "); first error: " +
                    [&]() -> std::string {
                      for (const auto& e : errors)
                        if (!e.empty()) return e;
                      return "unknown";
                    }());
  const std::size_t ok = result.ise_values.size();
  if (ok == 0) throw fit_error("every study run failed");

  const std::size_t d = result.degrees.front().size();
  result.mean_degree.assign(d, 0.0);
  for (const auto& deg : result.degrees)
    for (std::size_t j = 0; j < d; ++j)
      result.mean_degree[j] += static_cast<double>(deg[j]);
  for (double& v : result.mean_degree) v /= static_cast<double>(ok);
  if (ok >= 2) {
    result.sd_degree.assign(d, 0.0);
    for (const auto& deg : result.degrees)
      for (std::size_t j = 0; j < d; ++j) {
        const double diff =
            static_cast<double>(deg[j]) - result.mean_degree[j];
        result.sd_degree[j] += diff * diff;
      }
    for (double& v : result.sd_degree)
      v = std::sqrt(v / static_cast<double>(ok - 1));
  }

  double mean_ise = 0.0;
  for (double v : result.ise_values) mean_ise += v;
  mean_ise /= static_cast<double>(ok);
  result.mise_x100 = 100.0 * mean_ise;
  if (ok >= 2) {
    double ss = 0.0;
    for (double v : result.ise_values) ss += (v - mean_ise) * (v - mean_ise);
    result.sd_ise_x100 =
        100.0 * std::sqrt(ss / static_cast<double>(ok - 1));
  }

  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    t_start)
          .count();
  return result;
}

/// Plain-text table in the benchmark's reporting layout.
inline std::string study_table(const StudyResult& r) {
  auto pair_fmt = [](const std::vector<double>& v) {
    if (v.empty()) return std::string("-");
    std::string s = "(";
    char buf[64];
    for (std::size_t j = 0; j < v.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.2f", v[j]);
      s += (j ? ", " : "") + std::string(buf);
    }
    return s + ")";
  };
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof(buf), "target: %s  n=%zu  runs=%d\n",
                r.target.c_str(), r.n, r.runs);
  out += buf;
  out += "E(m_hat)     " + pair_fmt(r.mean_degree) + "\n";
  out += "SD(m_hat)    " + pair_fmt(r.sd_degree) + "\n";
  std::snprintf(buf, sizeof(buf), "MISE x100    %.3f\n", r.mise_x100);
  out += buf;
  if (r.failures > 0) {
    std::snprintf(buf, sizeof(buf), "failures     %d\n", r.failures);
    out += buf;
  }
  return out;
}

}  // namespace bernmix

#endif  // BERNMIX_SIMBENCH_HPP
