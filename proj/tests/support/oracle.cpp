#include "oracle.hpp"

#include "sbfe/error.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sbfe::testing {

std::optional<bool> scan_determined(const Instance& instance, Mask tested, Mask values) {
  const int n = instance.num_vars();
  std::vector<int> free_vars;
  for (int i = 0; i < n; ++i) {
    if (!((tested >> i) & 1U)) free_vars.push_back(i);
  }
  std::optional<bool> seen;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << free_vars.size()); ++c) {
    Mask x = values & tested;
    for (std::size_t j = 0; j < free_vars.size(); ++j) {
      if ((c >> j) & 1U) x |= Mask{1} << free_vars[j];
    }
    const bool v = eval(instance.formula(), x);
    if (seen && *seen != v) return std::nullopt;
    seen = v;
  }
  return seen;
}

Rational input_weight(const Instance& instance, Mask x) {
  Rational w = 1;
  const auto& p = instance.exact_probs();
  for (int i = 0; i < instance.num_vars(); ++i) w *= ((x >> i) & 1U) ? p[i] : 1 - p[i];
  return w;
}

Rational oracle_perm_cost_on(const Instance& instance, const std::vector<int>& order, Mask x, Mask free_mask) {
  Rational cost = 0;
  Mask tested = 0;
  if (scan_determined(instance, tested, x)) return cost;
  for (int v : order) {
    if (!((free_mask >> v) & 1U)) cost += instance.exact_costs()[v];
    tested |= Mask{1} << v;
    if (scan_determined(instance, tested, x)) return cost;
  }
  throw std::logic_error("order exhausted before f was determined");
}

Rational oracle_tree_cost_on(const Instance& instance, const AdaptiveTree& tree, Mask x, Mask free_mask) {
  Rational cost = 0;
  Mask tested = 0;
  int at = tree.root();
  while (!tree.node(at).is_stop()) {
    const int v = tree.node(at).var;
    if (!((free_mask >> v) & 1U)) cost += instance.exact_costs()[v];
    tested |= Mask{1} << v;
    at = ((x >> v) & 1U) ? tree.node(at).if_true : tree.node(at).if_false;
  }
  return cost;
}

Rational oracle_expected_cost(const Instance& instance, const NonAdaptiveStrategy& strategy, Mask free_mask) {
  Rational total = 0;
  for (Mask x = 0; x < (Mask{1} << instance.num_vars()); ++x) {
    total += input_weight(instance, x) * oracle_perm_cost_on(instance, strategy.order, x, free_mask);
  }
  return total;
}

Rational oracle_expected_cost(const Instance& instance, const AdaptiveTree& tree, Mask free_mask) {
  Rational total = 0;
  for (Mask x = 0; x < (Mask{1} << instance.num_vars()); ++x) {
    total += input_weight(instance, x) * oracle_tree_cost_on(instance, tree, x, free_mask);
  }
  return total;
}

Rational oracle_opt_nonadaptive(const Instance& instance) {
  std::vector<int> order(static_cast<std::size_t>(instance.num_vars()));
  std::iota(order.begin(), order.end(), 0);
  std::optional<Rational> best;
  do {
    const auto c = oracle_expected_cost(instance, NonAdaptiveStrategy{order});
    if (!best || c < *best) best = c;
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

std::vector<std::vector<int>> tree_leaf_paths(int depth) {
  // Preorder over edges: an edge at level h is followed by its left subtree's
  // edges, then its right subtree's.
  std::vector<std::vector<int>> out;
  int counter = 0;
  std::vector<int> path;
  auto walk = [&](auto&& self, int level) -> void {
    path.push_back(counter++);
    if (level == depth) {
      out.push_back(path);
    } else {
      self(self, level + 1);
      self(self, level + 1);
    }
    path.pop_back();
  };
  walk(walk, 1);
  walk(walk, 1);
  return out;
}

bool alive_leaf_exists(int depth, Mask x) {
  for (const auto& path : tree_leaf_paths(depth)) {
    if (std::all_of(path.begin(), path.end(), [x](int v) { return (x >> v) & 1U; })) return true;
  }
  return false;
}

Rational random_prob(Rng& rng) {
  const long den = rng.between(2, 12);
  const long num = rng.between(1, den - 1);
  return make_rational(num, den);
}

Rational random_cost(Rng& rng) {
  const long num = rng.between(1, 20);
  const long den = rng.between(1, 5);
  return make_rational(num, den);
}

std::vector<Rational> random_probs(Rng& rng, int n) {
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) out.push_back(random_prob(rng));
  return out;
}

std::vector<Rational> random_costs(Rng& rng, int n) {
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) out.push_back(random_cost(rng));
  return out;
}

namespace {

template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

RoNode random_ro_node(Rng& rng, std::vector<int> vars, bool conj) {
  if (vars.size() == 1) return RoNode::leaf(vars.front());
  shuffle(rng, vars);
  const auto groups = static_cast<std::size_t>(rng.between(2, static_cast<long>(std::min<std::size_t>(vars.size(), 3))));
  std::vector<std::vector<int>> parts(groups);
  for (std::size_t i = 0; i < vars.size(); ++i) parts[i < groups ? i : rng.below(groups)].push_back(vars[i]);
  std::vector<RoNode> kids;
  for (auto& p : parts) kids.push_back(random_ro_node(rng, std::move(p), !conj));
  return conj ? RoNode::all_of(std::move(kids)) : RoNode::any_of(std::move(kids));
}

}  // namespace

std::vector<std::vector<int>> random_partition(Rng& rng, std::vector<int> vars) {
  shuffle(rng, vars);
  std::vector<std::vector<int>> out;
  for (int v : vars) {
    if (out.empty() || rng.below(3) == 0) {
      out.push_back({v});
    } else {
      out[rng.below(out.size())].push_back(v);
    }
  }
  return out;
}

Instance random_read_once_dnf(Rng& rng, int n) {
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  const auto terms = random_partition(rng, vars);
  return Instance::exact(ReadOnceDnf::from_terms(n, terms).dnf(), random_costs(rng, n), random_probs(rng, n));
}

Instance random_equal_width_dnf(Rng& rng, int terms, int width, bool unit_costs, bool uniform_probs) {
  const int n = terms * width;
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  shuffle(rng, vars);
  std::vector<std::vector<int>> t(static_cast<std::size_t>(terms));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i / width)].push_back(vars[static_cast<std::size_t>(i)]);
  auto costs = unit_costs ? std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)) : random_costs(rng, n);
  auto probs = uniform_probs ? std::vector<Rational>(static_cast<std::size_t>(n), make_rational(1, 2)) : random_probs(rng, n);
  return Instance::exact(ReadOnceDnf::from_terms(n, t).dnf(), std::move(costs), std::move(probs));
}

Instance random_general_dnf(Rng& rng, int n) {
  const auto m = rng.between(1, 4);
  std::vector<DnfFormula::Term> terms;
  for (long j = 0; j < m; ++j) {
    std::vector<int> vars(static_cast<std::size_t>(n));
    std::iota(vars.begin(), vars.end(), 0);
    shuffle(rng, vars);
    const auto width = static_cast<std::size_t>(rng.between(1, std::min(n, 3)));
    DnfFormula::Term t;
    for (std::size_t i = 0; i < width; ++i) t.push_back({vars[i], rng.below(2) == 0});
    terms.push_back(std::move(t));
  }
  return Instance::exact(DnfFormula(n, std::move(terms)), random_costs(rng, n), random_probs(rng, n));
}

Instance random_truth_table(Rng& rng, int n) {
  TruthTable t(n);
  for (Mask x = 0; x < (Mask{1} << n); ++x) t.set(x, rng.below(2) == 1);
  return Instance::exact(std::move(t), random_costs(rng, n), random_probs(rng, n));
}

Instance random_rotree(Rng& rng, int n) {
  std::vector<int> vars(static_cast<std::size_t>(n));
  std::iota(vars.begin(), vars.end(), 0);
  Formula f = ConstantFormula{n, false};
  if (n == 1) {
    f = RoTree(1, RoNode::leaf(0));
  } else {
    f = RoTree(n, random_ro_node(rng, vars, rng.below(2) == 0));
  }
  return Instance::exact(std::move(f), random_costs(rng, n), random_probs(rng, n));
}

Instance random_or(Rng& rng, int n) {
  std::vector<std::vector<int>> terms;
  for (int i = 0; i < n; ++i) terms.push_back({i});
  return Instance::exact(ReadOnceDnf::from_terms(n, terms).dnf(), random_costs(rng, n), random_probs(rng, n));
}

Instance random_instance(Rng& rng, int n) {
  switch (rng.below(4)) {
    case 0:
      return random_read_once_dnf(rng, n);
    case 1:
      return random_general_dnf(rng, n);
    case 2:
      return random_rotree(rng, n);
    default:
      return random_truth_table(rng, n);
  }
}

NonAdaptiveStrategy random_permutation(Rng& rng, int n) {
  NonAdaptiveStrategy s;
  s.order.resize(static_cast<std::size_t>(n));
  std::iota(s.order.begin(), s.order.end(), 0);
  shuffle(rng, s.order);
  return s;
}

AdaptiveTree random_tree(Rng& rng, const Instance& instance) {
  AdaptiveTree tree;
  auto build = [&](auto&& self, Mask tested, Mask values) -> int {
    if (scan_determined(instance, tested, values)) return tree.add_stop();
    std::vector<int> open;
    for (int i = 0; i < instance.num_vars(); ++i) {
      if (!((tested >> i) & 1U)) open.push_back(i);
    }
    const int v = open[rng.below(open.size())];
    const int f = self(self, tested | (Mask{1} << v), values);
    const int t = self(self, tested | (Mask{1} << v), values | (Mask{1} << v));
    return tree.add_test(v, f, t);
  };
  tree.set_root(build(build, 0, 0));
  return tree;
}

}  // namespace sbfe::testing
