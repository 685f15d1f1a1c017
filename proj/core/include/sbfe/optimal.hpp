#pragma once

#include "sbfe/strategy.hpp"

#include <variant>
#include <vector>

namespace sbfe {

struct SolverLimits {
  int adaptive_max_vars = 20;
  int nonadaptive_max_vars = 16;
  int brute_nonadaptive_max_vars = 8;
  int brute_adaptive_max_vars = 4;
};

enum class StrategyClass { Adaptive, NonAdaptive };

/// Optimal value plus a strategy attaining it.
struct SolveResult {
  Rational value;
  std::variant<AdaptiveTree, NonAdaptiveStrategy> witness;

  /// Throw std::bad_variant_access for the wrong class.
  const AdaptiveTree& tree() const { return std::get<AdaptiveTree>(witness); }
  const NonAdaptiveStrategy& permutation() const { return std::get<NonAdaptiveStrategy>(witness); }
  Strategy strategy() const;
};

/// Memoization key: canonical truth table of a restriction over its support,
/// with the support expressed in original variable indices.
struct RestrictionKey {
  Mask support = 0;
  TruthTable table;

  friend bool operator==(const RestrictionKey&, const RestrictionKey&) = default;
};

struct RestrictionKeyHash {
  std::size_t operator()(const RestrictionKey& key) const noexcept {
    return key.table.hash() ^ (static_cast<std::size_t>(key.support) * 0x9E3779B97F4A7C15ULL);
  }
};

/// Drops the variables `table` does not depend on. `vars` lists the original
/// index of each table variable as a mask (table variable j is the j-th set bit).
RestrictionKey canonical_restriction(TruthTable table, Mask vars);

/// OPT_A by V(f) = 0 for constant f, else min_i c_i + p_i V(f|x_i=1) + (1-p_i) V(f|x_i=0).
/// Ties go to the lowest variable index.
SolveResult opt_adaptive(const Instance& instance, const SolverLimits& limits = {});

/// OPT_N by the subset recursion best(T) = min_{i not in T} U(T) c_i + best(T + i).
SolveResult opt_nonadaptive(const Instance& instance, const SolverLimits& limits = {});

/// Pr[f not determined by x restricted to T], summing pattern probabilities
/// over the 2^|T| patterns on T whose subcube is non-constant.
Rational undetermined_prob(const Instance& instance, Mask tested_set);

/// U(T) for every T in [0, 2^n), computed in bulk from a SubcubeTable with
/// integer pattern weights over a common denominator.
std::vector<Rational> undetermined_prob_table(const Instance& instance);

/// Exhaustive oracle: all n! permutations, or all decision trees.
SolveResult brute_force_opt(const Instance& instance, StrategyClass kind, const SolverLimits& limits = {});

}  // namespace sbfe
