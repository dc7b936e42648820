// Binary perfect Golay [23,12,7] code: systematic encoder, table-driven
// syndrome decoder and the Hamming-space primitives the fuzzy index needs.
//
// Bit convention: a BitVector23 stores Q1 in bit 22 (MSB) and Q23 in bit 0.
// A codeword carries its 12 information bits in bits 22..11 and its 11
// parity bits in bits 10..0.
#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "ffd/errors.hpp"

namespace ffd {

inline constexpr int kCodeLength = 23;
inline constexpr int kInfoLength = 12;
inline constexpr int kParityLength = 11;
inline constexpr std::uint32_t kCodewordCount = 1u << kInfoLength;   // 4096
inline constexpr std::uint32_t kSyndromeCount = 1u << kParityLength; // 2048
inline constexpr std::uint32_t kWordCount = 1u << kCodeLength;

class BitVector23 {
 public:
  static constexpr std::uint32_t kMask = kWordCount - 1;

  constexpr BitVector23() = default;
  constexpr explicit BitVector23(std::uint32_t value) : value_(value) {
    if (value > kMask) throw OutOfRange("value does not fit in 23 bits");
  }

  constexpr std::uint32_t value() const noexcept { return value_; }
  constexpr int weight() const noexcept { return std::popcount(value_); }
  // `question` is 1-based; Q1 is the most significant bit.
  constexpr bool question(int question) const noexcept {
    return (value_ >> (kCodeLength - question)) & 1u;
  }

  friend constexpr BitVector23 operator^(BitVector23 a, BitVector23 b) noexcept {
    BitVector23 out;
    out.value_ = a.value_ ^ b.value_;
    return out;
  }
  friend constexpr auto operator<=>(BitVector23, BitVector23) = default;

 private:
  std::uint32_t value_ = 0;
};

class InfoWord12 {
 public:
  static constexpr std::uint32_t kMask = kCodewordCount - 1;

  constexpr InfoWord12() = default;
  constexpr explicit InfoWord12(std::uint32_t value) : value_(value) {
    if (value > kMask) throw OutOfRange("value does not fit in 12 bits");
  }
  constexpr std::uint32_t value() const noexcept { return value_; }

  friend constexpr InfoWord12 operator^(InfoWord12 a, InfoWord12 b) noexcept {
    InfoWord12 out;
    out.value_ = a.value_ ^ b.value_;
    return out;
  }
  friend constexpr auto operator<=>(InfoWord12, InfoWord12) = default;

 private:
  std::uint32_t value_ = 0;
};

class Syndrome11 {
 public:
  static constexpr std::uint32_t kMask = kSyndromeCount - 1;

  constexpr Syndrome11() = default;
  constexpr explicit Syndrome11(std::uint32_t value) : value_(value) {
    if (value > kMask) throw OutOfRange("value does not fit in 11 bits");
  }
  constexpr std::uint32_t value() const noexcept { return value_; }
  constexpr bool is_zero() const noexcept { return value_ == 0; }

  friend constexpr Syndrome11 operator^(Syndrome11 a, Syndrome11 b) noexcept {
    Syndrome11 out;
    out.value_ = a.value_ ^ b.value_;
    return out;
  }
  friend constexpr auto operator<=>(Syndrome11, Syndrome11) = default;

 private:
  std::uint32_t value_ = 0;
};

constexpr int hamming(BitVector23 a, BitVector23 b) noexcept {
  return (a ^ b).weight();
}

struct Decoded {
  BitVector23 codeword;
  BitVector23 error;  // weight <= 3, codeword ^ error == input
};

// The two tables a decoder needs, plus the weight-7 codewords ("heptads")
// covering each weight-3 error class. Built once; immutable afterwards.
class GolayCodec {
 public:
  // x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
  static constexpr std::uint32_t kGeneratorPolynomial = 0xC75;

  static const GolayCodec& instance();

  // Row i is the codeword of the information word with only bit (11 - i)
  // set, so row 0 belongs to the information MSB.
  const std::array<BitVector23, kInfoLength>& generator_rows() const noexcept {
    return generator_rows_;
  }

  BitVector23 encode(InfoWord12 info) const noexcept {
    const std::uint32_t u = info.value();
    return BitVector23((u << kParityLength) | parity_[u]);
  }

  Syndrome11 syndrome(BitVector23 word) const noexcept {
    const std::uint32_t w = word.value();
    return Syndrome11(parity_[w >> kParityLength] ^ (w & Syndrome11::kMask));
  }

  BitVector23 error_for(Syndrome11 s) const noexcept {
    return syndrome_to_error_[s.value()];
  }

  Decoded decode(BitVector23 word) const noexcept {
    const BitVector23 error = error_for(syndrome(word));
    return {word ^ error, error};
  }

  // Throws NotACodeword when the syndrome is non-zero.
  InfoWord12 info_part(BitVector23 codeword) const;

  // Empty unless the syndrome class has a weight-3 coset leader; then the 5
  // weight-7 codewords whose support contains the leader's support.
  struct HeptadList {
    std::array<BitVector23, 5> items{};
    std::uint8_t size = 0;
    const BitVector23* begin() const noexcept { return items.data(); }
    const BitVector23* end() const noexcept { return items.data() + size; }
  };
  const HeptadList& heptads_for(Syndrome11 s) const noexcept {
    return syndrome_to_heptads_[s.value()];
  }

  // Index = weight, value = number of codewords of that weight.
  std::array<std::uint32_t, kCodeLength + 1> weight_distribution() const;

 private:
  GolayCodec();

  std::array<BitVector23, kInfoLength> generator_rows_{};
  std::array<std::uint16_t, kCodewordCount> parity_{};
  std::array<BitVector23, kSyndromeCount> syndrome_to_error_{};
  std::array<HeptadList, kSyndromeCount> syndrome_to_heptads_{};
};

// Free-function facade over GolayCodec::instance().
inline BitVector23 encode(InfoWord12 info) {
  return GolayCodec::instance().encode(info);
}
inline Syndrome11 syndrome(BitVector23 word) {
  return GolayCodec::instance().syndrome(word);
}
inline Decoded decode(BitVector23 word) {
  return GolayCodec::instance().decode(word);
}
inline InfoWord12 info_part(BitVector23 codeword) {
  return GolayCodec::instance().info_part(codeword);
}
inline std::array<std::uint32_t, kCodeLength + 1> weight_distribution() {
  return GolayCodec::instance().weight_distribution();
}

// ---- text forms ---------------------------------------------------------

// Exactly 23 '0'/'1' characters, Q1 first.
std::string format_bits(BitVector23 v);
// "0x" followed by 6 lowercase hex digits.
std::string format_hex(BitVector23 v);
// "0x" followed by 3 lowercase hex digits.
std::string format_hex(InfoWord12 v);

// Strict 23-character binary form. Throws FormatError.
BitVector23 parse_bits(std::string_view text);
// Binary form or 0x-prefixed hex. Throws FormatError.
BitVector23 parse_bitvector(std::string_view text);
// 0x-prefixed hex (or plain decimal). Throws FormatError.
InfoWord12 parse_info_word(std::string_view text);

}  // namespace ffd
