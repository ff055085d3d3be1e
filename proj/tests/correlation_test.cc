// Copyright 2026 The mfscore Authors.
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


#include "mfscore/correlation.h"

#include <cmath>

#include "gtest/gtest.h"

namespace mfscore {
namespace {

using V = std::vector<double>;

TEST(AverageRanksTest, TiesShareMeanRank) {
  EXPECT_EQ(AverageRanks(V{10, 30, 20}), (V{1, 3, 2}));
  EXPECT_EQ(AverageRanks(V{5, 5, 1, 9}), (V{2.5, 2.5, 1, 4}));
  EXPECT_EQ(AverageRanks(V{}), V{});
}

TEST(SpearmanTest, Examples) {
  Correlation c = Spearman(V{1, 2, 3, 4, 5}, V{2, 1, 4, 3, 5});
  ASSERT_TRUE(c.coefficient);
  EXPECT_NEAR(*c.coefficient, 0.8, 1e-12);
  EXPECT_EQ(c.n, 5u);
  EXPECT_NEAR(*Spearman(V{1, 2, 3, 4}, V{9, 7, 5, 1}).coefficient, -1.0, 1e-12);
  EXPECT_NEAR(*Spearman(V{3, 1, 2}, V{3, 1, 2}).coefficient, 1.0, 1e-12);
  // Monotone but nonlinear.
  EXPECT_NEAR(*Spearman(V{1, 2, 3, 4}, V{1, 8, 27, 64}).coefficient, 1.0, 1e-12);
}

TEST(SpearmanTest, ParserColumns) {
  V gpla = {70.1, 72.2, 70.2, 70.4, 70.5, 72.5, 73.1};
  V gsii = {71.9, 73.9, 71.5, 72.2, 73.7, 74.5, 75.3};
  // Ranks 7 3 6 5 4 2 1 against 6 3 7 5 4 2 1: sum of squared differences 2.
  EXPECT_NEAR(*Spearman(gpla, gsii).coefficient, 1.0 - 6.0 * 2.0 / (7.0 * 48.0), 1e-12);
}

TEST(SpearmanTest, TiesUseAverageRanks) {
  // Pearson of the rank vectors (1.5, 1.5, 3) and (1, 2, 3).
  double expected = 1.5 / std::sqrt(1.5 * 2.0);
  EXPECT_NEAR(*Spearman(V{1, 1, 2}, V{1, 2, 3}).coefficient, expected, 1e-12);
}

TEST(PearsonTest, Examples) {
  EXPECT_NEAR(*Pearson(V{1, 2, 3}, V{2, 4, 6}).coefficient, 1.0, 1e-12);
  EXPECT_NEAR(*Pearson(V{1, 2, 3}, V{3, 2, 1}).coefficient, -1.0, 1e-12);
  // Means 2.5 and 2.5; covariance sum 3, variance sums 5 and 5.
  EXPECT_NEAR(*Pearson(V{1, 2, 3, 4}, V{2, 1, 4, 3}).coefficient, 0.6, 1e-12);
}

TEST(CorrelationTest, ZeroVarianceHasNoCoefficient) {
  Correlation c = Pearson(V{1, 1, 1}, V{1, 2, 3});
  EXPECT_FALSE(c.coefficient);
  EXPECT_FALSE(c.p_value);
  EXPECT_FALSE(Spearman(V{4, 5, 6}, V{2, 2, 2}).coefficient);
}

TEST(CorrelationTest, InputValidation) {
  EXPECT_THROW(Pearson(V{1, 2}, V{1, 2}), std::invalid_argument);
  EXPECT_THROW(Spearman(V{1, 2, 3}, V{1, 2}), std::invalid_argument);
}

TEST(CorrelationTest, PValues) {
  // r = 0.6, n = 4: t = 0.6 * sqrt(2 / 0.64) = 1.06066, two-sided p for
  // 2 degrees of freedom is 1 - t / sqrt(2 + t^2).
  Correlation c = Pearson(V{1, 2, 3, 4}, V{2, 1, 4, 3});
  ASSERT_TRUE(c.p_value);
  double t = 0.6 * std::sqrt(2.0 / 0.64);
  EXPECT_NEAR(*c.p_value, 1.0 - t / std::sqrt(2.0 + t * t), 1e-9);
  EXPECT_NEAR(*Pearson(V{1, 2, 3}, V{2, 4, 6}).p_value, 0.0, 1e-12);
  Correlation s = Spearman(V{1, 2, 3, 4, 5}, V{2, 1, 4, 3, 5});
  EXPECT_GT(*s.p_value, 0.05);
  EXPECT_LT(*s.p_value, 0.2);
}

}  // namespace
}  // namespace mfscore
