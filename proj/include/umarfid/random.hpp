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

#ifndef UMARFID_RANDOM_HPP_
#define UMARFID_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

#include "umarfid/word.hpp"

namespace umarfid {

// SplitMix64 finalizer over (base, index, stream). Used to give every trial
// and every role inside a trial its own independent stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream = 0);

// Seeded deterministic stream. Only the raw mt19937_64 output is used (no
// std distributions), so draws are identical across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }
  // Uniform over {0,1}^bits.
  Word word(std::size_t bits);
  // Uniform over words of length `bits` with exactly two bits set.
  Word weight_two_word(std::size_t bits);

 private:
  std::mt19937_64 engine_;
};

}  // namespace umarfid

#endif  // UMARFID_RANDOM_HPP_
