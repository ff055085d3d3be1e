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

#ifndef MFSCORE_CORRELATION_H_
#define MFSCORE_CORRELATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mfscore {

struct Correlation {
  std::size_t n = 0;
  // Empty when either input has zero variance.
  std::optional<double> coefficient;
  // Two-sided, from the t approximation with n - 2 degrees of freedom.
  std::optional<double> p_value;
};

// Throw std::invalid_argument for unequal lengths or fewer than 3 values.
Correlation Pearson(std::span<const double> xs, std::span<const double> ys);
// Pearson correlation of the ranks; ties receive their average rank.
Correlation Spearman(std::span<const double> xs, std::span<const double> ys);

// 1-based ranks in ascending order of value, ties averaged.
std::vector<double> AverageRanks(std::span<const double> values);

}  // namespace mfscore

#endif  // MFSCORE_CORRELATION_H_
