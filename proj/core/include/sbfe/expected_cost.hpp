#pragma once

#include "sbfe/strategy.hpp"

#include <cstdint>

namespace sbfe {

inline constexpr int kExactEvaluationCap = 24;

/// Exact expected cost, E_{x~p}[cost_c(f, x, S)], with variables in
/// `free_mask` charged nothing. Uses the prefix recursion: every reachable
/// undetermined state contributes c_next * Pr(reaching it).
/// Throws ModeMismatch on float instances, SizeExceeded above the cap.
Rational expected_cost_exact(const Instance& instance, const Strategy& strategy, Mask free_mask = 0);

/// Same quantity by full enumeration of the 2^n inputs, each weighted by
/// prod p_i^{x_i} (1-p_i)^{1-x_i}. Independent of the recursion; the two must
/// agree exactly.
Rational expected_cost_by_enumeration(const Instance& instance, const Strategy& strategy, Mask free_mask = 0);

/// Expected cost when tests in `free_mask` are free (leaf-cost model when the
/// mask holds the internal edges of a tree instance).
inline Rational expected_leaf_cost(const Instance& instance, const Strategy& strategy, Mask free_mask) {
  return expected_cost_exact(instance, strategy, free_mask);
}

struct McEstimate {
  double mean = 0;
  double stderr_of_mean = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Monte Carlo estimate over i.i.d. x ~ p. Samples are split into `workers`
/// contiguous chunks; chunk w draws from Rng(derive_seed(seed, w)). The
/// (seed, samples, workers) triple fixes the result exactly.
McEstimate expected_cost_mc(const Instance& instance, const Strategy& strategy, std::uint64_t samples,
                            std::uint64_t seed, unsigned workers = 1, Mask free_mask = 0);

}  // namespace sbfe
