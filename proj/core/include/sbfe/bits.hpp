#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace sbfe {

/// Bitmask over variables; variable i is bit i (x0 is the least significant bit).
using Mask = std::uint64_t;

inline constexpr int kMaxVariables = 64;

constexpr Mask bit(int i) noexcept { return Mask{1} << i; }

constexpr Mask full_mask(int n) noexcept { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

constexpr bool test_bit(Mask m, int i) noexcept { return ((m >> i) & 1U) != 0; }

constexpr int popcount(Mask m) noexcept { return std::popcount(m); }

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

}  // namespace sbfe
