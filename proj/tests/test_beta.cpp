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

#include "bernmix/beta.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace bernmix {
namespace {

TEST(BetaLogDensity, UniformComponentIsFlat) {
  EXPECT_DOUBLE_EQ(beta_log_density(0, 0, 0.37), 0.0);
  EXPECT_DOUBLE_EQ(beta_log_density(0, 0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(beta_log_density(0, 0, 1.0), 0.0);
}

TEST(BetaLogDensity, ClosedFormMiddleComponent) {
  // (m+1) C(2,1) t (1-t) at t = 1/2 equals 3 * 2 * 1/4 = 1.5
  EXPECT_NEAR(beta_log_density(1, 2, 0.5), std::log(1.5), 1e-14);
}

TEST(BetaLogDensity, VanishesAtBoundaries) {
  EXPECT_EQ(beta_log_density(1, 2, 0.0), kNegInf);
  EXPECT_EQ(beta_log_density(1, 2, 1.0), kNegInf);
  // the edge components are finite at their own corner
  EXPECT_NEAR(beta_log_density(0, 2, 0.0), std::log(3.0), 1e-14);
  EXPECT_NEAR(beta_log_density(2, 2, 1.0), std::log(3.0), 1e-14);
}

TEST(BetaLogDensity, RejectsBadArguments) {
  EXPECT_THROW(beta_log_density(3, 2, 0.5), domain_error);
  EXPECT_THROW(beta_log_density(-1, 2, 0.5), domain_error);
  EXPECT_THROW(beta_log_density(0, 2, -0.1), domain_error);
  EXPECT_THROW(beta_log_density(0, 2, 1.1), domain_error);
}

// Independent quadrature oracle: every component density integrates to 1.
TEST(BetaLogDensity, IntegratesToOne) {
  for (const auto [i, m] : {std::pair{4, 8}, {0, 8}, {8, 8}, {50, 100}}) {
    const double total = testing::simpson(
        [&](double t) {
          const double lv = beta_log_density(i, m, t);
          return lv == kNegInf ? 0.0 : std::exp(lv);
        },
        0.0, 1.0, 50000);
    EXPECT_NEAR(total, 1.0, 1e-10) << "i=" << i << " m=" << m;
  }
}

TEST(BetaLogDensity, HandlesLargeDegreesWithoutOverflow) {
  // naive binomials overflow well before m = 200
  const double lv = beta_log_density(100, 200, 0.5);
  EXPECT_TRUE(std::isfinite(lv));
  const double total = testing::simpson(
      [&](double t) {
        const double v = beta_log_density(100, 200, t);
        return v == kNegInf ? 0.0 : std::exp(v);
      },
      0.0, 1.0, 50000);
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(BetaCdf, UniformComponentIsIdentity) {
  for (double t : {0.0, 0.13, 0.42, 0.9, 1.0})
    EXPECT_NEAR(beta_cdf(0, 0, t), t, 1e-15);
}

TEST(BetaCdf, ClosedFormLowestComponent) {
  // Beta(1, 3): F(t) = 1 - (1-t)^3
  EXPECT_NEAR(beta_cdf(0, 2, 0.5), 0.875, 1e-14);
  EXPECT_NEAR(beta_cdf(0, 2, 0.25), 1.0 - std::pow(0.75, 3), 1e-14);
}

TEST(BetaCdf, Endpoints) {
  EXPECT_DOUBLE_EQ(beta_cdf(4, 8, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(beta_cdf(4, 8, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(beta_cdf(120, 200, 1.0), 1.0);
}

TEST(BetaCdf, MatchesQuadratureOfDensity) {
  for (const auto [i, m] : {std::pair{4, 8}, {1, 5}, {60, 95}}) {
    for (double t : {0.1, 0.37, 0.5, 0.83}) {
      const double by_integral = testing::simpson(
          [&](double u) {
            const double lv = beta_log_density(i, m, u);
            return lv == kNegInf ? 0.0 : std::exp(lv);
          },
          0.0, t, 20000);
      EXPECT_NEAR(beta_cdf(i, m, t), by_integral, 1e-9)
          << "i=" << i << " m=" << m << " t=" << t;
    }
  }
}

TEST(BetaCdf, MonotoneInT) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = 1 + static_cast<int>(rng() % 120);
    const int i = static_cast<int>(rng() % (m + 1));
    double a = unif(rng), b = unif(rng);
    if (a > b) std::swap(a, b);
    EXPECT_LE(beta_cdf(i, m, a), beta_cdf(i, m, b) + 1e-12);
  }
}

TEST(BetaCdfTable, AgreesWithScalarCdf) {
  for (const int m : {0, 1, 8, 95}) {
    for (double t : {0.0, 1e-10, 0.25, 0.5, 0.999, 1.0}) {
      const auto table = beta_cdf_table(m, t);
      ASSERT_EQ(table.size(), static_cast<std::size_t>(m) + 1);
      for (int i = 0; i <= m; ++i)
        EXPECT_NEAR(table[static_cast<std::size_t>(i)], beta_cdf(i, m, t),
                    1e-13)
            << "m=" << m << " i=" << i << " t=" << t;
    }
  }
}

TEST(LogBinomial, SmallCases) {
  EXPECT_DOUBLE_EQ(log_binomial(0, 0), 0.0);
  EXPECT_NEAR(log_binomial(4, 2), std::log(6.0), 1e-14);
  EXPECT_NEAR(log_binomial(10, 3), std::log(120.0), 1e-13);
}

}  // namespace
}  // namespace bernmix
