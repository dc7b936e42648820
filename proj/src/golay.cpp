#include "ffd/golay.hpp"

#include <charconv>
#include <vector>

namespace ffd {
namespace {

// Remainder of x^degree modulo the generator polynomial, computed with a
// shift register (one multiply-by-x step per degree).
std::uint32_t monomial_remainder(int degree) {
  constexpr std::uint32_t kTop = 1u << kParityLength;
  std::uint32_t reg = 1;  // x^0
  for (int i = 0; i < degree; ++i) {
    reg <<= 1;
    if (reg & kTop) reg ^= GolayCodec::kGeneratorPolynomial;
  }
  return reg;
}

}  // namespace

const GolayCodec& GolayCodec::instance() {
  static const GolayCodec codec;
  return codec;
}

GolayCodec::GolayCodec() {
  // Systematic cyclic encoding: c(x) = x^11 u(x) + (x^11 u(x) mod g(x)).
  // Information bit j (0 = LSB of u) contributes x^(11 + j).
  std::array<std::uint32_t, kInfoLength> row_parity{};
  for (int j = 0; j < kInfoLength; ++j) {
    row_parity[j] = monomial_remainder(kParityLength + j);
    generator_rows_[kInfoLength - 1 - j] =
        BitVector23((1u << (kParityLength + j)) | row_parity[j]);
  }
  for (std::uint32_t u = 0; u < kCodewordCount; ++u) {
    std::uint32_t p = 0;
    for (int j = 0; j < kInfoLength; ++j) {
      if ((u >> j) & 1u) p ^= row_parity[j];
    }
    parity_[u] = static_cast<std::uint16_t>(p);
  }

  // Coset leaders: every pattern of weight <= 3 lands on its own syndrome.
  std::array<bool, kSyndromeCount> seen{};
  std::uint32_t filled = 0;
  auto place = [&](std::uint32_t pattern) {
    const std::uint32_t s = syndrome(BitVector23(pattern)).value();
    if (seen[s]) throw InvariantBreach("two light error patterns share a syndrome");
    seen[s] = true;
    syndrome_to_error_[s] = BitVector23(pattern);
    ++filled;
  };
  place(0);
  for (int a = 0; a < kCodeLength; ++a) {
    place(1u << a);
    for (int b = a + 1; b < kCodeLength; ++b) {
      place((1u << a) | (1u << b));
      for (int c = b + 1; c < kCodeLength; ++c) {
        place((1u << a) | (1u << b) | (1u << c));
      }
    }
  }
  if (filled != kSyndromeCount) throw InvariantBreach("syndrome table not full");

  std::vector<std::uint32_t> heptads;
  for (std::uint32_t u = 0; u < kCodewordCount; ++u) {
    const std::uint32_t c = encode(InfoWord12(u)).value();
    if (std::popcount(c) == 7) heptads.push_back(c);
  }
  for (std::uint32_t s = 0; s < kSyndromeCount; ++s) {
    const std::uint32_t e = syndrome_to_error_[s].value();
    if (std::popcount(e) != 3) continue;
    HeptadList& list = syndrome_to_heptads_[s];
    for (std::uint32_t h : heptads) {
      if ((h & e) != e) continue;
      if (list.size == list.items.size()) {
        throw InvariantBreach("more than 5 heptads cover a triple");
      }
      list.items[list.size++] = BitVector23(h);
    }
    if (list.size != list.items.size()) {
      throw InvariantBreach("fewer than 5 heptads cover a triple");
    }
  }
}

InfoWord12 GolayCodec::info_part(BitVector23 codeword) const {
  if (!syndrome(codeword).is_zero()) {
    throw NotACodeword(format_bits(codeword) + " has a non-zero syndrome");
  }
  return InfoWord12(codeword.value() >> kParityLength);
}

std::array<std::uint32_t, kCodeLength + 1> GolayCodec::weight_distribution() const {
  std::array<std::uint32_t, kCodeLength + 1> counts{};
  for (std::uint32_t u = 0; u < kCodewordCount; ++u) {
    ++counts[encode(InfoWord12(u)).weight()];
  }
  return counts;
}

// ---- text forms ---------------------------------------------------------

namespace {

std::string hex_digits(std::uint32_t value, int width) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "0x";
  for (int shift = 4 * (width - 1); shift >= 0; shift -= 4) {
    out.push_back(kDigits[(value >> shift) & 0xF]);
  }
  return out;
}

std::uint32_t parse_unsigned(std::string_view text, std::uint32_t limit,
                             const char* what) {
  int base = 10;
  std::string_view digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  }
  std::uint32_t value = 0;
  const char* first = digits.data();
  const char* last = first + digits.size();
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (digits.empty() || ec != std::errc() || ptr != last) {
    throw FormatError("cannot parse " + std::string(what) + " from '" +
                      std::string(text) + "'");
  }
  if (value > limit) {
    throw FormatError(std::string(what) + " '" + std::string(text) +
                      "' is out of range");
  }
  return value;
}

}  // namespace

std::string format_bits(BitVector23 v) {
  std::string out(kCodeLength, '0');
  for (int q = 1; q <= kCodeLength; ++q) {
    if (v.question(q)) out[q - 1] = '1';
  }
  return out;
}

std::string format_hex(BitVector23 v) { return hex_digits(v.value(), 6); }

std::string format_hex(InfoWord12 v) { return hex_digits(v.value(), 3); }

BitVector23 parse_bits(std::string_view text) {
  if (text.size() != static_cast<std::size_t>(kCodeLength)) {
    throw FormatError("expected a 23-character bit string, found " +
                      std::to_string(text.size()) + " characters");
  }
  std::uint32_t value = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw FormatError("bit string contains '" + std::string(1, ch) + "'");
    }
    value = (value << 1) | static_cast<std::uint32_t>(ch - '0');
  }
  return BitVector23(value);
}

BitVector23 parse_bitvector(std::string_view text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    return BitVector23(parse_unsigned(text, BitVector23::kMask, "23-bit word"));
  }
  return parse_bits(text);
}

InfoWord12 parse_info_word(std::string_view text) {
  return InfoWord12(parse_unsigned(text, InfoWord12::kMask, "12-bit information word"));
}

}  // namespace ffd
