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

#ifndef UMARFID_WORD_HPP_
#define UMARFID_WORD_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace umarfid {

// Raised for invalid word lengths, mixed lengths and malformed encodings.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultWordBits = 128;
inline constexpr std::size_t kMinWordBits = 4;
inline constexpr std::size_t kMaxWordBits = 1024;

// Throws ConfigError unless 4 <= bits <= 1024 and bits is a multiple of 4.
void validate_word_len(std::size_t bits);

// Fixed-length L-bit vector. Bit 0 is the least significant bit; hex text
// is most-significant nibble first. Storage is inline so words are cheap
// to copy.
class Word {
 public:
  static constexpr std::size_t kLimbBits = 64;
  static constexpr std::size_t kMaxLimbs = kMaxWordBits / kLimbBits;

  Word() = default;
  explicit Word(std::size_t bits);

  static Word zeros(std::size_t bits) { return Word(bits); }
  static Word ones(std::size_t bits);
  // Low 64 bits taken from `value`, truncated to `bits`.
  static Word from_u64(std::size_t bits, std::uint64_t value);
  // Accepts exactly bits/4 hex digits, either case.
  static Word from_hex(std::size_t bits, std::string_view hex);
  // Word with exactly the given bit positions set.
  static Word with_bits(std::size_t bits, std::initializer_list<std::size_t> positions);

  std::size_t bits() const { return bits_; }
  std::size_t limb_count() const { return (bits_ + kLimbBits - 1) / kLimbBits; }
  std::span<const std::uint64_t> limbs() const { return {limbs_.data(), limb_count()}; }

  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool value);
  // Bits [0, 64) as an integer; the whole value when bits() <= 64.
  std::uint64_t low64() const { return limbs_[0]; }

  bool is_zero() const;
  std::size_t hamming_weight() const;
  Word rotated_left(std::size_t n) const;

  Word& operator^=(const Word& other);
  Word& operator|=(const Word& other);
  Word& operator&=(const Word& other);
  friend Word operator^(Word a, const Word& b) { return a ^= b; }
  friend Word operator|(Word a, const Word& b) { return a |= b; }
  friend Word operator&(Word a, const Word& b) { return a &= b; }

  friend bool operator==(const Word& a, const Word& b);

  std::string to_hex() const;

 private:
  void require_same_length(const Word& other) const;
  void clear_padding();

  std::array<std::uint64_t, kMaxLimbs> limbs_{};
  std::uint16_t bits_ = 0;
};

enum class BitOp { kXor, kOr, kAnd };

Word bitwise(const Word& a, const Word& b, BitOp op);
std::size_t hamming_weight(const Word& w);
// Circular left shift by n mod L positions.
Word rotate_left(const Word& w, std::size_t n);
// Rot(a, b): a rotated left by hw(b) mod L.
Word rot(const Word& a, const Word& b);

struct ProtocolParams {
  std::size_t word_len = kDefaultWordBits;
  std::uint64_t seed = 0;

  void validate() const { validate_word_len(word_len); }
};

}  // namespace umarfid

template <>
struct std::hash<umarfid::Word> {
  std::size_t operator()(const umarfid::Word& w) const noexcept;
};

#endif  // UMARFID_WORD_HPP_
