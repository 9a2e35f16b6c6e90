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

#include "bernmix/degree_select.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bernmix/model.hpp"

namespace bernmix {
namespace {

// two-point samples with prescribed mean 0.5 and unbiased variance s2
std::vector<double> two_point_sample(double s2) {
  const double delta = std::sqrt(s2 / 2.0);
  return {0.5 - delta, 0.5 + delta};
}

TEST(MinDegreeBound, NormalBenchmarkParameters) {
  // mu = 0.5, sigma = 0.125: 0.25/0.015625 - 3 = 13
  EXPECT_EQ(min_degree_bound(two_point_sample(0.125 * 0.125)), 13);
}

TEST(MinDegreeBound, UniformHitsTheFloor) {
  // sigma^2 = 1/12 gives exactly 3 - 3 = 0 -> floor 1
  EXPECT_EQ(min_degree_bound(two_point_sample(1.0 / 12.0)), 1);
}

TEST(MinDegreeBound, BetaSevenSevenMoments) {
  // var of Beta(7,7) is 1/60: 15 - 3 = 12, the degree of beta_{12,6}
  EXPECT_EQ(min_degree_bound(two_point_sample(1.0 / 60.0)), 12);
}

TEST(MinDegreeBound, DegenerateMarginalFails) {
  const std::vector<double> flat{0.5, 0.5, 0.5};
  EXPECT_THROW(min_degree_bound(flat), selection_error);
  const std::vector<double> single{0.5};
  EXPECT_THROW(min_degree_bound(single), selection_error);
}

TEST(ChangepointStat, LinearSequenceIsFlatZero) {
  // constant increments: all logs cancel
  const std::vector<double> ells{0.0, 2.0, 4.0, 6.0, 8.0};
  for (int tau = 1; tau <= 3; ++tau)
    EXPECT_NEAR(changepoint_stat(ells, tau), 0.0, 1e-12);
}

TEST(ChangepointStat, DocumentedExampleValues) {
  // direct evaluation of the R formula on (0, 10, 11, 11.5)
  const std::vector<double> ells{0.0, 10.0, 11.0, 11.5};
  const double r1 = -1.0 * std::log(10.0 / 1.0) -
                    2.0 * std::log(1.5 / 2.0) + 3.0 * std::log(11.5 / 3.0);
  const double r2 = -2.0 * std::log(11.0 / 2.0) -
                    1.0 * std::log(0.5 / 1.0) + 3.0 * std::log(11.5 / 3.0);
  EXPECT_NEAR(changepoint_stat(ells, 1), r1, 1e-12);
  EXPECT_NEAR(changepoint_stat(ells, 2), r2, 1e-12);
  EXPECT_NEAR(changepoint_stat(ells, 1), 2.3040, 5e-4);
  EXPECT_NEAR(changepoint_stat(ells, 2), 1.3149, 5e-4);
  EXPECT_GT(changepoint_stat(ells, 1), changepoint_stat(ells, 2));
}

TEST(ChangepointStat, FlatTailUsesZeroLogZeroConvention) {
  const std::vector<double> ells{0.0, 10.0, 10.0, 10.0};
  // tail increment sum is 0: that term drops, the rest stays finite
  const double r1 = -1.0 * std::log(10.0) + 3.0 * std::log(10.0 / 3.0);
  EXPECT_NEAR(changepoint_stat(ells, 1), r1, 1e-12);
  EXPECT_TRUE(std::isfinite(changepoint_stat(ells, 2)));
}

TEST(ChangepointStat, NonpositiveIncrementsAreSentineled) {
  // head increment <= 0
  const std::vector<double> down{0.0, -1.0, 5.0, 6.0};
  EXPECT_EQ(changepoint_stat(down, 1), kNegInf);
  // negative tail
  const std::vector<double> hump{0.0, 5.0, 6.0, 4.0};
  EXPECT_EQ(changepoint_stat(hump, 2), kNegInf);
}

TEST(ChangepointStat, InvariantUnderConstantShift) {
  // dyadic values and a dyadic shift keep every difference exact in
  // floating point, so the statistic must be bit-identical
  std::mt19937_64 rng(1);
  std::vector<double> ells{0.0};
  for (int i = 0; i < 6; ++i)
    ells.push_back(ells.back() + static_cast<double>(rng() % 16 + 1) / 8.0);
  for (int tau = 1; tau <= 5; ++tau) {
    const double base = changepoint_stat(ells, tau);
    std::vector<double> shifted = ells;
    for (double& v : shifted) v += 1024.0;
    EXPECT_EQ(changepoint_stat(shifted, tau), base);
  }
}

TEST(ChangepointStat, ReversalSymmetryOnInteriorPoints) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  const int k = 7;
  std::vector<double> incr(k);
  for (auto& v : incr) v = unif(rng);
  std::vector<double> ells{0.0}, rells{0.0};
  for (int i = 0; i < k; ++i) ells.push_back(ells.back() + incr[i]);
  for (int i = k; i-- > 0;) rells.push_back(rells.back() + incr[i]);
  for (int tau = 1; tau <= k - 1; ++tau)
    EXPECT_NEAR(changepoint_stat(ells, tau),
                changepoint_stat(rells, k - tau), 1e-12);
}

TEST(ChangepointStat, RejectsBadTau) {
  const std::vector<double> ells{0.0, 1.0, 2.0, 3.0};
  EXPECT_THROW(changepoint_stat(ells, 0), domain_error);
  EXPECT_THROW(changepoint_stat(ells, 3), domain_error);  // boundary tau = k
  const std::vector<double> tiny{0.0, 1.0};
  EXPECT_THROW(changepoint_stat(tiny, 1), domain_error);
}

// select_degree on synthetic profile sequences, via a stub that bypasses
// fitting: we exercise the tie rule through changepoint_stat directly.
TEST(SelectDegree, SmallestMaximizerOnTies) {
  // symmetric increments: R(1) == R(3) by reversal symmetry, R built from
  // increments (5, 1, 1, 5) -> ties at tau = 1 and 3? Construct explicitly:
  const std::vector<double> ells{0.0, 5.0, 6.0, 7.0, 12.0};
  const double r1 = changepoint_stat(ells, 1);
  const double r3 = changepoint_stat(ells, 3);
  EXPECT_NEAR(r1, r3, 1e-12);  // exact tie by symmetry
  // the selection logic picks the smallest maximizer; emulate it
  double best = kNegInf;
  for (int tau = 1; tau <= 3; ++tau)
    best = std::max(best, changepoint_stat(ells, tau));
  int chosen = 0;
  for (int tau = 1; tau <= 3; ++tau)
    if (changepoint_stat(ells, tau) >= best - 1e-9) {
      chosen = tau;
      break;
    }
  EXPECT_EQ(chosen, 1);
}

TEST(SelectDegree, UniformDataConcentratesNearTheGridBase) {
  // flat profile likelihoods: the increments are overfitting noise and the
  // statistic favors small tau. The choice wanders a little run to run, so
  // assert the distribution over seeds (median in the lower half, never at
  // the top of the grid).
  auto uniform_model = BernsteinModel::uniform(SupportBox::unit(1));
  CandidateGrid grid{1, 8};
  std::vector<int> chosen;
  for (std::uint64_t seed = 40; seed < 48; ++seed) {
    const auto draws = uniform_model.sample(1000, seed);
    chosen.push_back(select_degree(draws.column(0), grid).degree);
  }
  std::sort(chosen.begin(), chosen.end());
  EXPECT_GE(chosen.front(), grid.base + 1);
  EXPECT_LE(chosen[chosen.size() / 2], grid.base + 3);
  EXPECT_LE(chosen.back(), grid.base + grid.count - 1);
}

TEST(SelectDegree, RecoversBetaComponentDegree) {
  // Beta(7,7) = beta_{12,6}: marginal selection should land near 12
  DegreeVector dv({12});
  std::vector<double> w(13, 0.0);
  w[6] = 1.0;
  BernsteinModel truth(dv, MixtureCoefficients(std::move(w)),
                       SupportBox::unit(1));
  const auto draws = truth.sample(200, 7);
  const std::vector<double> marginal = draws.column(0);
  const int base = min_degree_bound(marginal);
  EXPECT_NEAR(base, 12, 3);
  const auto sel = select_degree(marginal, CandidateGrid{base, 20});
  EXPECT_NEAR(sel.degree, 12, 4);
}

TEST(SelectDegrees, ReducesToPerDimensionSelection) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  std::vector<double> flat(100 * 2);
  for (auto& v : flat) v = unif(rng);
  Dataset data(100, 2, std::move(flat));
  std::vector<CandidateGrid> grids{{2, 6}, {3, 5}};
  const auto sel = select_degrees(data, SelectConfig{}, grids);
  ASSERT_EQ(sel.dimensions.size(), 2u);
  const auto dim0 = select_degree(data.column(0), grids[0]);
  const auto dim1 = select_degree(data.column(1), grids[1]);
  EXPECT_EQ(sel.dimensions[0].degree, dim0.degree);
  EXPECT_EQ(sel.dimensions[1].degree, dim1.degree);
  EXPECT_EQ(sel.chosen().values(),
            (std::vector<int>{dim0.degree, dim1.degree}));
}

TEST(SelectDegrees, ErrorsCarryTheDimensionIndex) {
  // second column is degenerate
  std::vector<double> flat;
  for (int i = 0; i < 10; ++i) {
    flat.push_back(0.1 + 0.08 * i);
    flat.push_back(0.5);
  }
  Dataset data(10, 2, std::move(flat));
  try {
    select_degrees(data);
    FAIL() << "expected selection_error";
  } catch (const selection_error& e) {
    EXPECT_NE(std::string(e.what()).find("dimension 1"), std::string::npos);
  }
}

TEST(CandidateGrid, Validation) {
  EXPECT_THROW((CandidateGrid{0, 5}.validate()), domain_error);
  EXPECT_THROW((CandidateGrid{3, 1}.validate()), domain_error);
  CandidateGrid ok{3, 2};
  ok.validate();
  EXPECT_EQ(ok.candidate(2), 5);
}

}  // namespace
}  // namespace bernmix
