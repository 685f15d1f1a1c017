#pragma once

#include "sbfe/formula.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace sbfe {

/// Constancy status of f on every subcube, indexed by ternary code
/// sum_i d_i 3^i with d_i = 0/1 for a tested false/true variable and 2 for
/// an untested one. Needs 3^n bytes, so n is capped.
class SubcubeTable {
 public:
  static constexpr int kMaxVars = 16;

  static constexpr std::uint8_t kCanBeFalse = 1;
  static constexpr std::uint8_t kCanBeTrue = 2;
  static constexpr std::uint8_t kMixed = kCanBeFalse | kCanBeTrue;

  explicit SubcubeTable(const TruthTable& table);

  int num_vars() const noexcept { return num_vars_; }

  std::size_t index(Mask tested, Mask values) const noexcept {
    return static_cast<std::size_t>(ternary_[values & tested]) +
           2 * static_cast<std::size_t>(ternary_[full_mask(num_vars_) & ~tested]);
  }
  std::uint8_t status(Mask tested, Mask values) const noexcept { return status_[index(tested, values)]; }
  std::uint8_t status_at(std::size_t index) const noexcept { return status_[index]; }

  std::optional<bool> determination(Mask tested, Mask values) const noexcept {
    const auto s = status(tested, values);
    if (s == kMixed) return std::nullopt;
    return s == kCanBeTrue;
  }

  /// sum_{i in mask} 3^i
  std::uint32_t ternary(Mask mask) const noexcept { return ternary_[mask]; }

 private:
  int num_vars_;
  std::vector<std::uint32_t> ternary_;
  std::vector<std::uint8_t> status_;
};

/// Answers is_determined queries for one formula as fast as its shape allows:
/// structural rules where they are exact, a SubcubeTable for small general
/// functions, and an exhaustive completion scan otherwise.
class Determiner {
 public:
  static constexpr int kDefaultTableCap = 14;

  explicit Determiner(const Formula& formula, int table_cap = kDefaultTableCap);

  std::optional<bool> operator()(const PartialAssignment& pa) const { return check(pa.tested, pa.values); }
  std::optional<bool> check(Mask tested, Mask values) const;

  int num_vars() const noexcept { return num_vars_; }
  const Formula& formula() const noexcept { return *formula_; }

 private:
  enum class Route { Constant, MonotoneDnf, Tree, Table, Scan };

  std::shared_ptr<const Formula> formula_;
  int num_vars_;
  Route route_;
  bool constant_ = false;
  std::vector<DnfFormula::TermMasks> terms_;
  std::shared_ptr<const SubcubeTable> table_;
};

}  // namespace sbfe
