#pragma once

#include "sbfe/strategy.hpp"

#include <vector>

namespace sbfe {

/// Per-term quantities used to order a read-once DNF.
struct TermStats {
  std::size_t term = 0;
  /// Probability the term is true: prod of p over its variables.
  Rational truth_prob;
  /// Expected cost of evaluating the term alone, testing `order` until a false
  /// variable appears: sum_i c_{o_i} prod_{r<i} p_{o_r}.
  Rational expected_cost;
  /// Term variables in non-decreasing c_i / (1 - p_i), ties by index.
  std::vector<int> order;
};

/// Stats for every term, in term index order. Throws NotReadOnceDnf, ModeMismatch.
std::vector<TermStats> term_stats(const Instance& instance);

/// Terms sorted by non-decreasing expected_cost / truth_prob, ties by term index.
std::vector<TermStats> ordered_terms(const Instance& instance);

/// The optimal adaptive strategy for read-once DNFs: evaluate terms in
/// C(T)/P(T) order, each in c/(1-p) order, moving on at the first false variable.
AdaptivePolicy boros_unluyurt(const Instance& instance);

/// Smallest t with 2^t >= n^2, i.e. ceil(2 log2 n).
int algorithm1_threshold(int num_vars);

/// Non-adaptive O(log n) strategy for unit costs and p = 1/2: terms by
/// increasing length, each contributing all its variables when short or its
/// first tau variables when long, then every remaining variable.
/// Throws PreconditionViolated for non-unit costs or non-uniform p.
NonAdaptiveStrategy algorithm1(const Instance& instance);

/// Round r lists the r-th variable (within-term order) of each term that has one.
NonAdaptiveStrategy round_robin(const Instance& instance);

/// Terms in C/P order, each tested completely in within-term order.
NonAdaptiveStrategy term_order(const Instance& instance);

/// Variables by increasing cost, ties by index. Works for any formula.
NonAdaptiveStrategy increasing_cost(const Instance& instance);

}  // namespace sbfe
