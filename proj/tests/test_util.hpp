#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ffd/golay.hpp"

namespace ffd::test {

inline BitVector23 random_word(std::mt19937_64& rng) {
  return BitVector23(static_cast<std::uint32_t>(rng() & BitVector23::kMask));
}

// Uniform random word of exactly `weight` set bits.
inline BitVector23 random_pattern(std::mt19937_64& rng, int weight) {
  std::uint32_t v = 0;
  while (std::popcount(v) < weight) v |= 1u << (rng() % kCodeLength);
  return BitVector23(v);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string tmp_path(const std::string& name) {
  return std::string(FFD_TEST_TMP) + "/" + name;
}

}  // namespace ffd::test
