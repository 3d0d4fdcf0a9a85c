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

#include "umarfid/random.hpp"

#include <stdexcept>

namespace umarfid {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream) {
  return splitmix64(splitmix64(splitmix64(base) ^ index) ^ stream);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RandomStream::below: zero bound");
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % bound;
}

Word RandomStream::word(std::size_t bits) {
  Word w(bits);
  for (std::size_t i = 0; i < bits; i += 64) {
    const std::uint64_t chunk = engine_();
    for (std::size_t j = 0; j < 64 && i + j < bits; ++j) {
      w.set_bit(i + j, (chunk >> j) & 1u);
    }
  }
  return w;
}

Word RandomStream::weight_two_word(std::size_t bits) {
  const std::size_t first = below(bits);
  std::size_t second = below(bits - 1);
  if (second >= first) ++second;
  return Word::with_bits(bits, {first, second});
}

}  // namespace umarfid
