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

// Naive per-bit reference implementations. They touch Word only through
// bit() / set_bit(), so they share no code path with the limb arithmetic
// they check.

#ifndef UMARFID_TESTS_BIT_ORACLE_HPP_
#define UMARFID_TESTS_BIT_ORACLE_HPP_

#include <cstddef>
#include <vector>

#include "umarfid/word.hpp"

namespace umarfid::oracle {

inline std::vector<bool> bits_of(const Word& w) {
  std::vector<bool> out(w.bits());
  for (std::size_t i = 0; i < w.bits(); ++i) out[i] = w.bit(i);
  return out;
}

inline Word word_of(const std::vector<bool>& bits) {
  Word w(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) w.set_bit(i, bits[i]);
  return w;
}

template <typename Op>
Word per_bit(const Word& a, const Word& b, Op op) {
  const auto x = bits_of(a);
  const auto y = bits_of(b);
  std::vector<bool> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = op(x[i], y[i]);
  return word_of(out);
}

inline Word xor_of(const Word& a, const Word& b) {
  return per_bit(a, b, [](bool p, bool q) { return p != q; });
}
inline Word or_of(const Word& a, const Word& b) {
  return per_bit(a, b, [](bool p, bool q) { return p || q; });
}
inline Word and_of(const Word& a, const Word& b) {
  return per_bit(a, b, [](bool p, bool q) { return p && q; });
}

inline std::size_t weight(const Word& w) {
  std::size_t n = 0;
  for (bool bit : bits_of(w)) n += bit ? 1 : 0;
  return n;
}

// Bit i moves to position (i + n) mod L.
inline Word rotl(const Word& w, std::size_t n) {
  const auto in = bits_of(w);
  std::vector<bool> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) out[(i + n) % in.size()] = in[i];
  return word_of(out);
}

inline Word rot(const Word& a, const Word& b) { return rotl(a, weight(b)); }

inline Word msg_a(const Word& k, const Word& n) { return xor_of(k, n); }
inline Word msg_b(const Word& k, const Word& n) {
  return xor_of(oracle::rot(k, k), oracle::rot(n, n));
}
inline Word msg_c(const Word& k, const Word& n) {
  return xor_of(or_of(k, oracle::rot(n, n)), and_of(oracle::rot(k, k), n));
}
inline Word next_idt(const Word& k, const Word& n) { return xor_of(k, oracle::rot(n, n)); }
inline Word next_key(const Word& k, const Word& n) { return xor_of(oracle::rot(k, k), n); }

}  // namespace umarfid::oracle

#endif  // UMARFID_TESTS_BIT_ORACLE_HPP_
