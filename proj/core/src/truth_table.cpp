#include "sbfe/truth_table.hpp"

#include "sbfe/error.hpp"

#include <array>
#include <bit>

namespace sbfe {

namespace {

// kLow[j]: bits whose position has bit j clear.
constexpr std::array<std::uint64_t, 6> kLow = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

// Gathers the bits of `w` whose position has bit j == value into the low 32 bits.
std::uint64_t compress_word(std::uint64_t w, int j, bool value) noexcept {
  if (value) w >>= (1U << j);
  w &= kLow[j];
  for (int s = j; s < 5; ++s) w = (w | (w >> (1U << s))) & kLow[s + 1];
  return w;
}

std::size_t word_count(int num_vars) noexcept {
  return num_vars <= 6 ? 1 : std::size_t{1} << (num_vars - 6);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

TruthTable::TruthTable(int num_vars, bool value) : num_vars_(num_vars) {
  if (num_vars < 0 || num_vars > 30) {
    throw SizeExceeded("truth table with " + std::to_string(num_vars) + " variables");
  }
  words_.assign(word_count(num_vars), value ? ~std::uint64_t{0} : 0);
  if (value) words_[0] &= valid_mask();
}

std::uint64_t TruthTable::valid_mask() const noexcept {
  return num_vars_ >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1U << num_vars_)) - 1;
}

TruthTable TruthTable::from_hex(int num_vars, std::string_view hex) {
  TruthTable t(num_vars);
  const std::uint64_t digits = std::max<std::uint64_t>(1, t.size() / 4);
  if (hex.size() != digits) {
    throw ParseError("bits_hex for n=" + std::to_string(num_vars) + " needs " +
                     std::to_string(digits) + " hex digits, got " + std::to_string(hex.size()));
  }
  for (std::uint64_t i = 0; i < digits; ++i) {
    const int v = hex_value(hex[digits - 1 - i]);
    if (v < 0) throw ParseError("invalid hex digit in bits_hex");
    t.words_[i / 16] |= static_cast<std::uint64_t>(v) << ((i % 16) * 4);
  }
  if ((t.words_[0] & ~t.valid_mask()) != 0) throw ParseError("bits_hex sets bits beyond 2^n");
  return t;
}

std::string TruthTable::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::uint64_t digits = std::max<std::uint64_t>(1, size() / 4);
  std::string out(digits, '0');
  for (std::uint64_t i = 0; i < digits; ++i) {
    out[digits - 1 - i] = kDigits[(words_[i / 16] >> ((i % 16) * 4)) & 0xF];
  }
  return out;
}

std::uint64_t TruthTable::count_ones() const noexcept {
  std::uint64_t total = 0;
  for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::optional<bool> TruthTable::constant_value() const noexcept {
  const std::uint64_t ones = count_ones();
  if (ones == 0) return false;
  if (ones == size()) return true;
  return std::nullopt;
}

TruthTable TruthTable::cofactor(int var, bool value) const {
  if (var < 0 || var >= num_vars_) throw InvalidFormula("cofactor variable out of range");
  TruthTable out(num_vars_ - 1);
  if (var >= 6) {
    const std::size_t block = std::size_t{1} << (var - 6);
    std::size_t o = 0;
    for (std::size_t base = 0; base < words_.size(); base += 2 * block) {
      const std::size_t from = base + (value ? block : 0);
      for (std::size_t k = 0; k < block; ++k) out.words_[o++] = words_[from + k];
    }
  } else if (num_vars_ <= 6) {
    out.words_[0] = compress_word(words_[0], var, value) & out.valid_mask();
  } else {
    for (std::size_t w = 0; w < out.words_.size(); ++w) {
      out.words_[w] = compress_word(words_[2 * w], var, value) |
                      (compress_word(words_[2 * w + 1], var, value) << 32);
    }
  }
  return out;
}

TruthTable TruthTable::restrict_in_place(int var, bool value) const {
  if (var < 0 || var >= num_vars_) throw InvalidFormula("restriction variable out of range");
  TruthTable out(num_vars_);
  if (var >= 6) {
    const std::size_t block = std::size_t{1} << (var - 6);
    for (std::size_t base = 0; base < words_.size(); base += 2 * block) {
      const std::size_t from = base + (value ? block : 0);
      for (std::size_t k = 0; k < block; ++k) {
        out.words_[base + k] = words_[from + k];
        out.words_[base + block + k] = words_[from + k];
      }
    }
  } else {
    const unsigned shift = 1U << var;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      const std::uint64_t t = (value ? (words_[w] >> shift) : words_[w]) & kLow[var];
      out.words_[w] = (t | (t << shift)) & out.valid_mask();
    }
  }
  return out;
}

bool TruthTable::depends_on(int var) const noexcept {
  if (var < 0 || var >= num_vars_) return false;
  if (var >= 6) {
    const std::size_t block = std::size_t{1} << (var - 6);
    for (std::size_t base = 0; base < words_.size(); base += 2 * block) {
      for (std::size_t k = 0; k < block; ++k) {
        if (words_[base + k] != words_[base + block + k]) return true;
      }
    }
    return false;
  }
  const unsigned shift = 1U << var;
  for (auto w : words_) {
    if (((w >> shift) & kLow[var]) != (w & kLow[var])) return true;
  }
  return false;
}

Mask TruthTable::support() const noexcept {
  Mask m = 0;
  for (int i = 0; i < num_vars_; ++i) {
    if (depends_on(i)) m |= bit(i);
  }
  return m;
}

std::size_t TruthTable::hash() const noexcept {
  // FNV-1a over the words, seeded with the variable count.
  std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(num_vars_);
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace sbfe
