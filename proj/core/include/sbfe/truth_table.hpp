#pragma once

#include "sbfe/bits.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sbfe {

inline constexpr int kDefaultTruthTableCap = 24;

/// Dense truth table: bit x holds f(x), with input bit i carrying variable i.
/// Storage is 64-bit words; for n < 6 only the low 2^n bits of word 0 are used
/// and the rest are kept zero so equality and hashing are plain word compares.
class TruthTable {
 public:
  TruthTable() : TruthTable(0, false) {}
  explicit TruthTable(int num_vars, bool value = false);

  template <typename Fn>
  static TruthTable from_function(int num_vars, Fn&& fn) {
    TruthTable t(num_vars);
    for (std::uint64_t x = 0; x < t.size(); ++x) {
      if (fn(static_cast<Mask>(x))) t.set(x, true);
    }
    return t;
  }

  /// Big-endian hex of the 2^n-bit integer; ceil(2^n / 4) digits, at least one.
  static TruthTable from_hex(int num_vars, std::string_view hex);
  std::string to_hex() const;

  int num_vars() const noexcept { return num_vars_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << num_vars_; }

  bool get(std::uint64_t x) const noexcept { return ((words_[x >> 6] >> (x & 63)) & 1U) != 0; }
  void set(std::uint64_t x, bool value) noexcept {
    if (value) {
      words_[x >> 6] |= std::uint64_t{1} << (x & 63);
    } else {
      words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
    }
  }

  std::uint64_t count_ones() const noexcept;
  std::optional<bool> constant_value() const noexcept;
  bool is_constant() const noexcept { return constant_value().has_value(); }

  /// f with x_var fixed, as a function of the remaining n-1 variables
  /// (variables above `var` shift down by one).
  TruthTable cofactor(int var, bool value) const;

  /// f with x_var fixed, still over n variables (no longer depends on var).
  TruthTable restrict_in_place(int var, bool value) const;

  bool depends_on(int var) const noexcept;
  Mask support() const noexcept;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::size_t hash() const noexcept;

  friend bool operator==(const TruthTable& a, const TruthTable& b) noexcept {
    return a.num_vars_ == b.num_vars_ && a.words_ == b.words_;
  }

 private:
  std::uint64_t valid_mask() const noexcept;

  int num_vars_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace sbfe
