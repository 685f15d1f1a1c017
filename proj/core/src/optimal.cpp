#include "sbfe/optimal.hpp"

#include "sbfe/error.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>

namespace sbfe {

Strategy SolveResult::strategy() const {
  return std::visit([](const auto& w) -> Strategy { return w; }, witness);
}

namespace {

void require_exact(const Instance& instance, const char* what) {
  if (!instance.is_exact()) throw ModeMismatch(std::string(what) + " needs an exact-mode instance");
}

void require_size(const Instance& instance, int cap, const char* what) {
  if (instance.num_vars() > cap) {
    throw SizeExceeded(std::string(what) + ": n=" + std::to_string(instance.num_vars()) + " exceeds cap " +
                       std::to_string(cap));
  }
}

// Original variable index of table variable j within `vars`.
int nth_var(Mask vars, int j) {
  for (int k = 0; k < j; ++k) vars &= vars - 1;
  return std::countr_zero(vars);
}

class AdaptiveSolver {
 public:
  explicit AdaptiveSolver(const Instance& instance)
      : costs_(instance.exact_costs()), probs_(instance.exact_probs()) {}

  struct Entry {
    Rational value;
    int best_var = -1;
  };

  const Entry& solve(const RestrictionKey& key) {
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Entry entry;
    if (key.support != 0) {
      const int k = key.table.num_vars();
      bool first = true;
      for (int j = 0; j < k; ++j) {
        const int v = nth_var(key.support, j);
        const Mask rest = key.support & ~bit(v);
        const auto& p = probs_[static_cast<std::size_t>(v)];
        // Child references may be invalidated by rehashing; copy the values out.
        const Rational if_true = solve(canonical_restriction(key.table.cofactor(j, true), rest)).value;
        const Rational if_false = solve(canonical_restriction(key.table.cofactor(j, false), rest)).value;
        Rational candidate = costs_[static_cast<std::size_t>(v)] + p * if_true + (1 - p) * if_false;
        if (first || candidate < entry.value) {
          entry.value = std::move(candidate);
          entry.best_var = v;
          first = false;
        }
      }
    }
    return memo_.emplace(key, std::move(entry)).first->second;
  }

  int build_tree(const RestrictionKey& key, AdaptiveTree& tree) {
    if (key.support == 0) return tree.add_stop();
    const int v = solve(key).best_var;
    const int j = std::popcount(key.support & (bit(v) - 1));
    const Mask rest = key.support & ~bit(v);
    const int f = build_tree(canonical_restriction(key.table.cofactor(j, false), rest), tree);
    const int t = build_tree(canonical_restriction(key.table.cofactor(j, true), rest), tree);
    return tree.add_test(v, f, t);
  }

  std::size_t memo_size() const noexcept { return memo_.size(); }

 private:
  const std::vector<Rational>& costs_;
  const std::vector<Rational>& probs_;
  std::unordered_map<RestrictionKey, Entry, RestrictionKeyHash> memo_;
};

// Integer weights for patterns: p_i = a_i / b_i, so a pattern v on T has
// probability A[v] * B[T \ v] / D[T].
template <typename Int>
std::vector<Rational> weighted_undetermined(const SubcubeTable& table, const std::vector<BigInt>& a,
                                            const std::vector<BigInt>& b) {
  const int n = table.num_vars();
  const std::size_t size = std::size_t{1} << n;
  auto convert = [](const BigInt& z) -> Int {
    if constexpr (std::is_same_v<Int, BigInt>) {
      return z;
    } else {
      return static_cast<Int>(z.get_ui());
    }
  };
  std::vector<Int> num(size), comp(size), den(size);
  num[0] = 1;
  comp[0] = 1;
  den[0] = 1;
  for (std::size_t m = 1; m < size; ++m) {
    const int low = std::countr_zero(m);
    const std::size_t rest = m & (m - 1);
    const auto i = static_cast<std::size_t>(low);
    num[m] = num[rest] * convert(a[i]);
    comp[m] = comp[rest] * convert(b[i] - a[i]);
    den[m] = den[rest] * convert(b[i]);
  }
  std::vector<Rational> out(size);
  const Mask all = full_mask(n);
  for (std::size_t t = 0; t < size; ++t) {
    const Mask tested = t;
    const std::size_t base = 2 * static_cast<std::size_t>(table.ternary(all & ~tested));
    Int sum = 0;
    for (Mask v = tested;; v = (v - 1) & tested) {
      if (table.status_at(base + table.ternary(v)) == SubcubeTable::kMixed) sum += num[v] * comp[tested ^ v];
      if (v == 0) break;
    }
    if constexpr (std::is_same_v<Int, BigInt>) {
      out[t] = Rational(sum, den[t]);
    } else {
      out[t] = Rational(BigInt(static_cast<unsigned long>(sum)), BigInt(static_cast<unsigned long>(den[t])));
    }
    out[t].canonicalize();
  }
  return out;
}

// Completion-scan constancy using only formula evaluation.
bool subcube_constant_by_scan(const Formula& formula, Mask tested, Mask values) {
  return completion_scan(formula, {tested, values}).has_value();
}

struct TreeCandidate {
  Rational cost;  // reach-weighted cost contribution of this subtree
  int var = -1;
  std::shared_ptr<const TreeCandidate> if_false;
  std::shared_ptr<const TreeCandidate> if_true;
};
using CandidatePtr = std::shared_ptr<const TreeCandidate>;

std::vector<CandidatePtr> all_trees(const Instance& instance, const PartialAssignment& pa, const Rational& reach) {
  if (completion_scan(instance.formula(), pa)) return {std::make_shared<const TreeCandidate>(TreeCandidate{0, -1, {}, {}})};
  const auto& c = instance.exact_costs();
  const auto& p = instance.exact_probs();
  std::vector<CandidatePtr> out;
  for (int v = 0; v < instance.num_vars(); ++v) {
    if (pa.is_tested(v)) continue;
    const auto i = static_cast<std::size_t>(v);
    const auto falses = all_trees(instance, pa.with(v, false), reach * (1 - p[i]));
    const auto trues = all_trees(instance, pa.with(v, true), reach * p[i]);
    for (const auto& f : falses) {
      for (const auto& t : trues) {
        out.push_back(std::make_shared<const TreeCandidate>(
            TreeCandidate{reach * c[i] + f->cost + t->cost, v, f, t}));
      }
    }
  }
  return out;
}

int to_tree(const TreeCandidate& cand, AdaptiveTree& tree) {
  if (cand.var < 0) return tree.add_stop();
  const int f = to_tree(*cand.if_false, tree);
  const int t = to_tree(*cand.if_true, tree);
  return tree.add_test(cand.var, f, t);
}

}  // namespace

RestrictionKey canonical_restriction(TruthTable table, Mask vars) {
  // Walk from the highest table variable down so lower indices stay valid.
  for (int j = table.num_vars() - 1; j >= 0; --j) {
    if (!table.depends_on(j)) {
      vars &= ~bit(nth_var(vars, j));
      table = table.cofactor(j, false);
    }
  }
  return {vars, std::move(table)};
}

SolveResult opt_adaptive(const Instance& instance, const SolverLimits& limits) {
  require_exact(instance, "opt_adaptive");
  require_size(instance, limits.adaptive_max_vars, "opt_adaptive");
  const int n = instance.num_vars();
  AdaptiveSolver solver(instance);
  const auto root = canonical_restriction(to_truth_table(instance.formula(), std::max(n, 1)), full_mask(n));
  SolveResult result{solver.solve(root).value, AdaptiveTree{}};
  AdaptiveTree tree;
  tree.set_root(solver.build_tree(root, tree));
  result.witness = std::move(tree);
  return result;
}

std::vector<Rational> undetermined_prob_table(const Instance& instance) {
  require_exact(instance, "undetermined_prob_table");
  const int n = instance.num_vars();
  if (n > SubcubeTable::kMaxVars) throw SizeExceeded("undetermined_prob_table capped at n=16");
  const SubcubeTable table(to_truth_table(instance.formula()));
  std::vector<BigInt> a, b;
  BigInt all_dens = 1;
  for (const auto& p : instance.exact_probs()) {
    a.push_back(p.get_num());
    b.push_back(p.get_den());
    all_dens *= p.get_den();
  }
  // Every partial sum is bounded by prod b_i, so 64-bit words suffice below 2^63.
  if (mpz_sizeinbase(all_dens.get_mpz_t(), 2) <= 63) return weighted_undetermined<std::uint64_t>(table, a, b);
  return weighted_undetermined<BigInt>(table, a, b);
}

Rational undetermined_prob(const Instance& instance, Mask tested_set) {
  require_exact(instance, "undetermined_prob");
  const int n = instance.num_vars();
  tested_set &= full_mask(n);
  if (popcount(tested_set) > kDefaultTruthTableCap) throw SizeExceeded("undetermined_prob over too many patterns");
  const Determiner determiner(instance.formula());
  const auto& p = instance.exact_probs();
  const auto vars = bits_of(tested_set);
  Rational total(0);
  const std::uint64_t patterns = std::uint64_t{1} << vars.size();
  for (std::uint64_t code = 0; code < patterns; ++code) {
    Mask values = 0;
    Rational weight(1);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto& pi = p[static_cast<std::size_t>(vars[k])];
      if ((code >> k) & 1U) {
        values |= bit(vars[k]);
        weight *= pi;
      } else {
        weight *= 1 - pi;
      }
    }
    if (!determiner.check(tested_set, values)) total += weight;
  }
  return total;
}

SolveResult opt_nonadaptive(const Instance& instance, const SolverLimits& limits) {
  require_exact(instance, "opt_nonadaptive");
  require_size(instance, std::min(limits.nonadaptive_max_vars, SubcubeTable::kMaxVars), "opt_nonadaptive");
  const int n = instance.num_vars();
  const auto undetermined = undetermined_prob_table(instance);
  const auto& c = instance.exact_costs();
  const std::size_t size = std::size_t{1} << n;
  const Mask all = full_mask(n);

  std::vector<Rational> best(size);
  std::vector<int> choice(size, -1);
  for (std::size_t t = size; t-- > 0;) {
    const Mask tested = t;
    if (tested == all || undetermined[t] == 0) continue;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if (test_bit(tested, i)) continue;
      Rational candidate = undetermined[t] * c[static_cast<std::size_t>(i)] + best[tested | bit(i)];
      if (first || candidate < best[t]) {
        best[t] = std::move(candidate);
        choice[t] = i;
        first = false;
      }
    }
  }

  NonAdaptiveStrategy order;
  Mask tested = 0;
  while (choice[tested] >= 0) {
    order.order.push_back(choice[tested]);
    tested |= bit(choice[tested]);
  }
  for (int i = 0; i < n; ++i) {
    if (!test_bit(tested, i)) order.order.push_back(i);
  }
  return {best[0], std::move(order)};
}

SolveResult brute_force_opt(const Instance& instance, StrategyClass kind, const SolverLimits& limits) {
  require_exact(instance, "brute_force_opt");
  const int n = instance.num_vars();
  if (kind == StrategyClass::NonAdaptive) {
    require_size(instance, limits.brute_nonadaptive_max_vars, "brute_force_opt(nonadaptive)");
    const auto& p = instance.exact_probs();
    const auto& c = instance.exact_costs();
    const std::size_t size = std::size_t{1} << n;
    // U(T) by completion scans on the formula itself.
    std::vector<Rational> undetermined(size);
    for (std::size_t t = 0; t < size; ++t) {
      const Mask tested = t;
      for (Mask v = tested;; v = (v - 1) & tested) {
        if (!subcube_constant_by_scan(instance.formula(), tested, v)) {
          Rational w(1);
          for (int i : bits_of(tested)) {
            if (test_bit(v, i)) {
              w *= p[static_cast<std::size_t>(i)];
            } else {
              w *= 1 - p[static_cast<std::size_t>(i)];
            }
          }
          undetermined[t] += w;
        }
        if (v == 0) break;
      }
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    SolveResult best{0, NonAdaptiveStrategy{order}};
    bool first = true;
    do {
      Rational cost(0);
      Mask prefix = 0;
      for (int v : order) {
        cost += c[static_cast<std::size_t>(v)] * undetermined[prefix];
        prefix |= bit(v);
      }
      if (first || cost < best.value) {
        best = {cost, NonAdaptiveStrategy{order}};
        first = false;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
  }

  require_size(instance, limits.brute_adaptive_max_vars, "brute_force_opt(adaptive)");
  const auto trees = all_trees(instance, PartialAssignment{}, Rational(1));
  const auto best = std::min_element(trees.begin(), trees.end(),
                                     [](const CandidatePtr& x, const CandidatePtr& y) { return x->cost < y->cost; });
  AdaptiveTree tree;
  tree.set_root(to_tree(**best, tree));
  return {(*best)->cost, std::move(tree)};
}

}  // namespace sbfe
