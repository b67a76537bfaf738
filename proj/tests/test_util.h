/*
 * Copyright 2026 The BlindMatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BLINDMATCH_TESTS_TEST_UTIL_H_
#define BLINDMATCH_TESTS_TEST_UTIL_H_

#include <cmath>
#include <vector>

#include "blindmatch/field.h"
#include "blindmatch/profile.h"

namespace blindmatch::testing {

// 0.999 quantile of the chi-squared distribution with 15 degrees of freedom.
inline constexpr double kChiSquare15Q999 = 37.697;

// Pearson statistic for equal-width buckets over [lo, hi].
inline double ChiSquareUniform(const std::vector<uint64_t>& samples,
                               uint64_t lo, uint64_t hi, size_t buckets) {
  std::vector<double> counts(buckets, 0);
  const double width = static_cast<double>(hi - lo + 1) / buckets;
  for (uint64_t s : samples) {
    size_t b = static_cast<size_t>((s - lo) / width);
    counts[std::min(b, buckets - 1)] += 1;
  }
  // Expected counts follow the exact number of integers in each bucket.
  double stat = 0;
  for (size_t b = 0; b < buckets; ++b) {
    uint64_t first = lo + static_cast<uint64_t>(std::ceil(b * width));
    uint64_t last = b + 1 == buckets
                        ? hi
                        : lo + static_cast<uint64_t>(std::ceil((b + 1) * width)) - 1;
    double expected = samples.size() * static_cast<double>(last - first + 1) /
                      static_cast<double>(hi - lo + 1);
    stat += (counts[b] - expected) * (counts[b] - expected) / expected;
  }
  return stat;
}

inline DnaProfile MakeProfile(std::initializer_list<std::pair<uint64_t, uint64_t>> rows,
                              uint64_t p = FieldParams::kDefaultModulus) {
  FieldParams f(p);
  std::vector<Slot> slots;
  for (auto [eta, sigma] : rows) {
    slots.push_back({FieldElement(eta, f), FieldElement(sigma, f)});
  }
  return DnaProfile(std::move(slots));
}

}  // namespace blindmatch::testing

#endif  // BLINDMATCH_TESTS_TEST_UTIL_H_
