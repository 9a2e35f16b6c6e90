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

#include "bernmix/support.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace bernmix {
namespace {

TEST(SupportBox, ValidatesBounds) {
  EXPECT_THROW(SupportBox({0.0}, {0.0}), domain_error);
  EXPECT_THROW(SupportBox({1.0}, {0.0}), domain_error);
  EXPECT_THROW(SupportBox({}, {}), domain_error);
  SupportBox box({0.0, 0.0}, {7.0, 120.0});
  EXPECT_DOUBLE_EQ(box.volume(), 840.0);
}

TEST(ToUnit, IdentityOnUnitBox) {
  const SupportBox box = SupportBox::unit(3);
  const double y[3] = {0.2, 0.5, 0.99};
  double x[3];
  box.to_unit(std::span<const double>(y, 3), std::span<double>(x, 3));
  for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(x[j], y[j]);
}

TEST(ToUnit, MidpointAndNamedPoints) {
  SupportBox box({0.0, 0.0}, {7.0, 120.0});
  double x[2];
  {
    const double y[2] = {3.5, 60.0};
    box.to_unit(std::span<const double>(y, 2), std::span<double>(x, 2));
    EXPECT_DOUBLE_EQ(x[0], 0.5);
    EXPECT_DOUBLE_EQ(x[1], 0.5);
  }
  {
    // a duration/waiting pair: (4.0, 80) -> (4/7, 2/3)
    const double y[2] = {4.0, 80.0};
    box.to_unit(std::span<const double>(y, 2), std::span<double>(x, 2));
    EXPECT_NEAR(x[0], 4.0 / 7.0, 1e-15);
    EXPECT_NEAR(x[1], 2.0 / 3.0, 1e-15);
  }
}

TEST(ToUnit, BoundaryMapsToExactEndpoints) {
  SupportBox box({-2.0}, {5.0});
  double x[1];
  const double lo[1] = {-2.0}, hi[1] = {5.0};
  box.to_unit(std::span<const double>(lo, 1), std::span<double>(x, 1));
  EXPECT_EQ(x[0], 0.0);
  box.to_unit(std::span<const double>(hi, 1), std::span<double>(x, 1));
  EXPECT_EQ(x[0], 1.0);
}

TEST(ToUnit, OutsideBoxThrowsWithRowIndex) {
  SupportBox box({0.0}, {1.0});
  Dataset data(3, 1, {0.5, 1.5, 0.2});
  try {
    to_unit(data, box);
    FAIL() << "expected transform_error";
  } catch (const transform_error& e) {
    EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
  }
}

TEST(RoundTrip, ToUnitThenFromUnitIsIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SupportBox box({-3.0, 100.0}, {2.5, 250.0});
  for (int rep = 0; rep < 200; ++rep) {
    double y[2], x[2], back[2];
    for (int j = 0; j < 2; ++j)
      y[j] = box.lower()[j] + box.width(j) * unif(rng);
    box.to_unit(std::span<const double>(y, 2), std::span<double>(x, 2));
    box.from_unit(std::span<const double>(x, 2), std::span<double>(back, 2));
    for (int j = 0; j < 2; ++j)
      EXPECT_NEAR(back[j], y[j], 1e-12 * std::abs(y[j]));
  }
}

TEST(DensityBackTransform, DividesByVolume) {
  EXPECT_DOUBLE_EQ(density_back_transform(1.0, SupportBox::unit(2)), 1.0);
  EXPECT_DOUBLE_EQ(density_back_transform(1.0, SupportBox({0.0}, {2.0})),
                   0.5);
  SupportBox faithful_box({0.0, 0.0}, {7.0, 120.0});
  EXPECT_NEAR(density_back_transform(84.0, faithful_box), 0.1, 1e-15);
}

TEST(AutoBox, ExactDataWithZeroMargin) {
  Dataset data(2, 1, {0.0, 1.0});
  const SupportBox box = auto_box(data, 0.0);
  EXPECT_DOUBLE_EQ(box.lower()[0], 0.0);
  EXPECT_DOUBLE_EQ(box.upper()[0], 1.0);
}

TEST(AutoBox, MarginWidensByRangeFraction) {
  Dataset data(2, 1, {1.0, 3.0});
  const SupportBox box = auto_box(data, 0.05);
  EXPECT_NEAR(box.lower()[0], 0.9, 1e-15);
  EXPECT_NEAR(box.upper()[0], 3.1, 1e-15);
}

TEST(AutoBox, ZeroRangeDimensionFails) {
  Dataset data(3, 2, {0.5, 1.0, 0.5, 2.0, 0.5, 3.0});
  EXPECT_THROW(auto_box(data, 0.05), transform_error);
}

TEST(TransformSpec, AppliesConfiguredDirection) {
  TransformSpec spec{SupportBox({0.0}, {4.0}), TransformDirection::kToUnit};
  const double y[1] = {1.0};
  double x[1];
  spec.apply(std::span<const double>(y, 1), std::span<double>(x, 1));
  EXPECT_DOUBLE_EQ(x[0], 0.25);
  spec.direction = TransformDirection::kFromUnit;
  double back[1];
  spec.apply(std::span<const double>(x, 1), std::span<double>(back, 1));
  EXPECT_DOUBLE_EQ(back[0], 1.0);
}

}  // namespace
}  // namespace bernmix
