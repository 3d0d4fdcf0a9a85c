// Copyright 2026 The umarfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UMARFID_STATS_HPP_
#define UMARFID_STATS_HPP_

#include <cstddef>

namespace umarfid {

// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 0.0;

  bool contains(double x) const { return low <= x && x <= high; }
};

// Wilson score interval for a binomial proportion. Throws
// std::invalid_argument when trials == 0 or successes > trials.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

}  // namespace umarfid

#endif  // UMARFID_STATS_HPP_
