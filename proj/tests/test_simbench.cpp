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

#include "bernmix/simbench.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace bernmix {
namespace {

TEST(Targets, DensitiesIntegrateToOne) {
  for (const auto& target :
       {TargetDistribution::beta_product(),
        TargetDistribution::truncated_normal(),
        TargetDistribution::normal_mixture(), TargetDistribution::power88()}) {
    const double total = integrate_box(
        SupportBox::unit(2), 96,
        [&](std::span<const double> p) { return target.density(p[0], p[1]); });
    EXPECT_NEAR(total, 1.0, 1e-6) << target.name();
  }
}

TEST(Targets, BetaProductMatchesBasisClosedForm) {
  const auto target = TargetDistribution::beta_product();
  for (double a : {0.2, 0.5, 0.77})
    for (double b : {0.3, 0.6}) {
      EXPECT_NEAR(target.density(a, b),
                  beta_density(6, 12, a) * beta_density(4, 8, b), 1e-12);
    }
}

TEST(Targets, SamplesAreInsideTheUnitSquare) {
  for (const auto& target :
       {TargetDistribution::beta_product(),
        TargetDistribution::truncated_normal(),
        TargetDistribution::normal_mixture(), TargetDistribution::power88()}) {
    const auto data = target.sample(5000, 21);
    EXPECT_TRUE(data.in_unit_cube()) << target.name();
  }
}

TEST(Targets, BetaProductSampleMoments) {
  const auto data = TargetDistribution::beta_product().sample(100000, 5);
  double mean[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < data.size(); ++i)
    for (int j = 0; j < 2; ++j) mean[j] += data(i, j);
  for (int j = 0; j < 2; ++j)
    EXPECT_NEAR(mean[j] / static_cast<double>(data.size()), 0.5, 0.005);
}

TEST(Targets, Power88SampleMoments) {
  // E[X1] = 0.5 * 9/10 + 0.5 * 1/2 = 0.7
  const auto data = TargetDistribution::power88().sample(100000, 6);
  double mean[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < data.size(); ++i)
    for (int j = 0; j < 2; ++j) mean[j] += data(i, j);
  for (int j = 0; j < 2; ++j)
    EXPECT_NEAR(mean[j] / static_cast<double>(data.size()), 0.7, 0.005);
}

TEST(Targets, TruncatedNormalRejectionIsRare) {
  // 4 sigma to the nearest edge: virtually every proposal is accepted, so
  // sampling n points is fast and the moments match the untruncated ones
  const auto data = TargetDistribution::truncated_normal().sample(50000, 8);
  double mean[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < data.size(); ++i)
    for (int j = 0; j < 2; ++j) mean[j] += data(i, j);
  for (int j = 0; j < 2; ++j)
    EXPECT_NEAR(mean[j] / static_cast<double>(data.size()), 0.5, 0.003);
}

TEST(Targets, NormalMixtureComponentShares) {
  const auto data = TargetDistribution::normal_mixture().sample(100000, 9);
  // component means are at .3 and .7 with sigma .065: classify by midpoint
  std::size_t low = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data(i, 0) < 0.5) ++low;
  EXPECT_NEAR(static_cast<double>(low) / static_cast<double>(data.size()),
              0.3, 0.01);
}

TEST(Targets, UserModelDelegatesToModelSampler) {
  const auto model = testing::power88_model();
  const auto target = TargetDistribution::user_model(model);
  const auto a = target.sample(100, 3);
  const auto b = model.sample(100, 3);
  EXPECT_EQ(a.storage(), b.storage());
  EXPECT_NEAR(target.density(0.3, 0.8), testing::power88_density(0.3, 0.8),
              1e-12);
}

TEST(Ise, ZeroForExactRepresentation) {
  const auto model = testing::power88_model();
  const double v = ise(model, testing::power88_density);
  EXPECT_LE(v, 1e-10);
}

TEST(Ise, UniformVersusPower88DualOracle) {
  // integral of (4.5(x^8+y^8) - 1)^2: quadrature against an independent
  // Simpson oracle
  auto uniform_model = BernsteinModel::uniform(SupportBox::unit(2));
  // degrees (0,0) model: evaluate via the generic path
  const double by_quadrature = ise(
      uniform_model,
      [](double a, double b) { return testing::power88_density(a, b); });
  const double by_simpson = testing::simpson2d(
      [](double a, double b) {
        const double diff = 1.0 - testing::power88_density(a, b);
        return diff * diff;
      },
      600);
  EXPECT_NEAR(by_quadrature, by_simpson, 0.005 * by_simpson);
}

TEST(Ise, ConstantOffsetGivesSquaredConstant) {
  const double v = ise_callbacks(
      [](double, double) { return 2.5; }, [](double, double) { return 2.2; },
      32);
  EXPECT_NEAR(v, 0.09, 1e-12);
}

TEST(Ise, SymmetricInCallbackSwap) {
  auto f = [](double a, double b) { return 1.0 + a * b; };
  auto g = [](double a, double b) { return testing::power88_density(a, b); };
  EXPECT_DOUBLE_EQ(ise_callbacks(f, g, 64), ise_callbacks(g, f, 64));
}

TEST(RunStudy, SingleRunReportsIseWithoutSd) {
  StudyConfig config;
  config.n = 60;
  config.runs = 1;
  config.seed = 11;
  config.grid_count = 6;
  const auto result = run_study(TargetDistribution::power88(), config);
  EXPECT_EQ(result.ise_values.size(), 1u);
  EXPECT_FALSE(result.sd_ise_x100.has_value());
  EXPECT_TRUE(result.sd_degree.empty());
  EXPECT_NEAR(result.mise_x100, 100.0 * result.ise_values[0], 1e-12);
}

TEST(RunStudy, DeterministicAndThreadCountInvariant) {
  StudyConfig config;
  config.n = 50;
  config.runs = 4;
  config.seed = 3;
  config.grid_count = 5;
  const auto a = run_study(TargetDistribution::power88(), config);
  config.threads = 3;
  const auto b = run_study(TargetDistribution::power88(), config);
  ASSERT_EQ(a.ise_values.size(), b.ise_values.size());
  for (std::size_t i = 0; i < a.ise_values.size(); ++i)
    EXPECT_EQ(a.ise_values[i], b.ise_values[i]);
  EXPECT_EQ(a.degrees, b.degrees);
  EXPECT_EQ(a.mise_x100, b.mise_x100);
}

TEST(StudyTable, ContainsTheReportedRows) {
  StudyResult r;
  r.target = "beta";
  r.n = 100;
  r.runs = 3;
  r.mean_degree = {11.99, 8.46};
  r.sd_degree = {1.56, 1.48};
  r.mise_x100 = 3.733;
  const std::string table = study_table(r);
  EXPECT_NE(table.find("E(m_hat)"), std::string::npos);
  EXPECT_NE(table.find("SD(m_hat)"), std::string::npos);
  EXPECT_NE(table.find("MISE x100"), std::string::npos);
  EXPECT_NE(table.find("(11.99, 8.46)"), std::string::npos);
  EXPECT_NE(table.find("3.733"), std::string::npos);
}

}  // namespace
}  // namespace bernmix
