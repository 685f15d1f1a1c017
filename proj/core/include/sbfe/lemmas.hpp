#pragma once

#include "sbfe/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sbfe {

struct LemmaStat {
  std::string name;
  double value = 0;
  /// "num/den" when the statistic is known exactly, empty otherwise.
  std::string exact;
};

struct LemmaResult {
  std::string id;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  std::vector<LemmaStat> stats;
  bool pass = false;

  const LemmaStat* stat(const std::string& name) const;
};

std::string lemma_result_to_json(const LemmaResult& result, int indent = 2);

struct EarthmoverCase {
  BigInt l_prime;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// For p_1 >= ... >= p_L >= 0 and p >= p_1 (p > 0): L' = floor(sum p_l / p),
/// lhs = sum_l l p_l, rhs = sum_{l <= L'} l p. Throws HypothesisViolated.
EarthmoverCase earthmover_case(const std::vector<Rational>& p_list, const Rational& p);
LemmaResult check_earthmover(const std::vector<Rational>& p_list, const Rational& p);
/// `trials` random valid inputs drawn from `seed`, lengths in [1, max_len].
LemmaResult check_earthmover_batch(std::uint64_t trials, std::uint64_t seed, int max_len = 12);

/// Exact law of Z_d for the process Z_0 = 1, Z_{h+1} ~ Bin(2 Z_h, (1+eps)/2).
/// Entry k is Pr(Z_d = k), k in [0, 2^d].
std::vector<Rational> branching_distribution(int depth, const Rational& eps);
/// Same law from the tree instance: enumerate all 2^n edge outcomes and count
/// alive leaves. Throws SizeExceeded for depth > 3.
std::vector<Rational> branching_distribution_by_edges(int depth, const Rational& eps);

/// Simulates Z_d `samples` times. Passes iff the sample mean is within
/// 4 stderr of (1+eps)^d and the empirical Pr(Z_d > 0) >= eps - 4 stderr.
/// For depth <= 2 additionally requires the two exact laws above to agree.
LemmaResult check_branching(int depth, const Rational& eps, std::uint64_t samples, std::uint64_t seed);

/// Leaf-cost model on the depth-d tree instance: internal edges are free and
/// tested first, then the leaves in some order. Over every leaf order, finds
/// those minimizing the expected number of leaf tests given that some leaf is
/// alive, and checks that each has a nonincreasing first-alive-leaf
/// probability sequence. Throws SizeExceeded for depth > 3.
LemmaResult check_leaf_monotone(int depth, const Rational& eps);

/// First-alive-leaf probabilities p_1..p_L for one leaf order (positions in
/// the tree's left-to-right leaf numbering), conditioned on f = 1.
std::vector<Rational> first_alive_leaf_probs(int depth, const Rational& eps, const std::vector<int>& leaf_order);

}  // namespace sbfe
