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

#include "umarfid/word.hpp"

#include <bit>

namespace umarfid {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

using Limbs = std::array<std::uint64_t, Word::kMaxLimbs>;

// Logical shifts over the first `count` limbs. Bits shifted past the top
// limb are left for the caller to mask.
Limbs shift_left(const Limbs& in, std::size_t count, std::size_t n) {
  Limbs out{};
  const std::size_t whole = n / 64;
  const std::size_t part = n % 64;
  for (std::size_t i = count; i-- > whole;) {
    std::uint64_t v = in[i - whole] << part;
    if (part != 0 && i - whole > 0) v |= in[i - whole - 1] >> (64 - part);
    out[i] = v;
  }
  return out;
}

Limbs shift_right(const Limbs& in, std::size_t count, std::size_t n) {
  Limbs out{};
  const std::size_t whole = n / 64;
  const std::size_t part = n % 64;
  for (std::size_t i = 0; i + whole < count; ++i) {
    std::uint64_t v = in[i + whole] >> part;
    if (part != 0 && i + whole + 1 < count) v |= in[i + whole + 1] << (64 - part);
    out[i] = v;
  }
  return out;
}

}  // namespace

void validate_word_len(std::size_t bits) {
  if (bits < kMinWordBits || bits > kMaxWordBits) {
    throw ConfigError("word length " + std::to_string(bits) + " outside [" +
                      std::to_string(kMinWordBits) + ", " + std::to_string(kMaxWordBits) + "]");
  }
  if (bits % 4 != 0) {
    throw ConfigError("word length " + std::to_string(bits) + " is not a multiple of 4");
  }
}

Word::Word(std::size_t bits) {
  validate_word_len(bits);
  bits_ = static_cast<std::uint16_t>(bits);
}

Word Word::ones(std::size_t bits) {
  Word w(bits);
  for (std::size_t i = 0; i < w.limb_count(); ++i) w.limbs_[i] = ~std::uint64_t{0};
  w.clear_padding();
  return w;
}

Word Word::from_u64(std::size_t bits, std::uint64_t value) {
  Word w(bits);
  w.limbs_[0] = value;
  w.clear_padding();
  return w;
}

Word Word::from_hex(std::size_t bits, std::string_view hex) {
  Word w(bits);
  if (hex.size() != bits / 4) {
    throw ConfigError("expected " + std::to_string(bits / 4) + " hex digits, got " +
                      std::to_string(hex.size()));
  }
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const int v = hex_value(hex[hex.size() - 1 - k]);
    if (v < 0) throw ConfigError("invalid hex digit in '" + std::string(hex) + "'");
    w.limbs_[(4 * k) / 64] |= static_cast<std::uint64_t>(v) << ((4 * k) % 64);
  }
  return w;
}

Word Word::with_bits(std::size_t bits, std::initializer_list<std::size_t> positions) {
  Word w(bits);
  for (std::size_t p : positions) w.set_bit(p, true);
  return w;
}

bool Word::bit(std::size_t i) const {
  if (i >= bits_) throw std::out_of_range("bit index out of range");
  return (limbs_[i / 64] >> (i % 64)) & 1u;
}

void Word::set_bit(std::size_t i, bool value) {
  if (i >= bits_) throw std::out_of_range("bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    limbs_[i / 64] |= mask;
  } else {
    limbs_[i / 64] &= ~mask;
  }
}

bool Word::is_zero() const {
  for (std::uint64_t limb : limbs()) {
    if (limb != 0) return false;
  }
  return true;
}

std::size_t Word::hamming_weight() const {
  std::size_t total = 0;
  for (std::uint64_t limb : limbs()) total += static_cast<std::size_t>(std::popcount(limb));
  return total;
}

Word Word::rotated_left(std::size_t n) const {
  if (bits_ == 0) return *this;
  n %= bits_;
  if (n == 0) return *this;
  Word out = *this;
  if (bits_ == 64) {
    out.limbs_[0] = std::rotl(limbs_[0], static_cast<int>(n));
    return out;
  }
  if (bits_ < 64) {
    const std::uint64_t v = limbs_[0];
    out.limbs_[0] = (v << n) | (v >> (bits_ - n));
    out.clear_padding();
    return out;
  }
  const std::size_t count = limb_count();
  const Limbs hi = shift_left(limbs_, count, n);
  const Limbs lo = shift_right(limbs_, count, bits_ - n);
  for (std::size_t i = 0; i < count; ++i) out.limbs_[i] = hi[i] | lo[i];
  out.clear_padding();
  return out;
}

Word& Word::operator^=(const Word& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < limb_count(); ++i) limbs_[i] ^= other.limbs_[i];
  return *this;
}

Word& Word::operator|=(const Word& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < limb_count(); ++i) limbs_[i] |= other.limbs_[i];
  return *this;
}

Word& Word::operator&=(const Word& other) {
  require_same_length(other);
  for (std::size_t i = 0; i < limb_count(); ++i) limbs_[i] &= other.limbs_[i];
  return *this;
}

bool operator==(const Word& a, const Word& b) {
  a.require_same_length(b);
  for (std::size_t i = 0; i < a.limb_count(); ++i) {
    if (a.limbs_[i] != b.limbs_[i]) return false;
  }
  return true;
}

std::string Word::to_hex() const {
  std::string out(bits_ / 4, '0');
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto nibble = (limbs_[(4 * k) / 64] >> ((4 * k) % 64)) & 0xFu;
    out[out.size() - 1 - k] = kHexDigits[nibble];
  }
  return out;
}

void Word::require_same_length(const Word& other) const {
  if (bits_ != other.bits_) {
    throw ConfigError("word length mismatch: " + std::to_string(bits_) + " vs " +
                      std::to_string(other.bits_));
  }
}

void Word::clear_padding() {
  const std::size_t count = limb_count();
  for (std::size_t i = count; i < kMaxLimbs; ++i) limbs_[i] = 0;
  if (bits_ % 64 != 0 && count > 0) {
    limbs_[count - 1] &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }
}

Word bitwise(const Word& a, const Word& b, BitOp op) {
  switch (op) {
    case BitOp::kXor:
      return a ^ b;
    case BitOp::kOr:
      return a | b;
    case BitOp::kAnd:
      return a & b;
  }
  throw std::logic_error("unknown BitOp");
}

std::size_t hamming_weight(const Word& w) { return w.hamming_weight(); }

Word rotate_left(const Word& w, std::size_t n) { return w.rotated_left(n); }

Word rot(const Word& a, const Word& b) {
  if (a.bits() != b.bits()) {
    throw ConfigError("word length mismatch in rot: " + std::to_string(a.bits()) + " vs " +
                      std::to_string(b.bits()));
  }
  return a.rotated_left(b.hamming_weight());
}

}  // namespace umarfid

std::size_t std::hash<umarfid::Word>::operator()(const umarfid::Word& w) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ w.bits();
  for (std::uint64_t limb : w.limbs()) {
    h ^= limb + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}
