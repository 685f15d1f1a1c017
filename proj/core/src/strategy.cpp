#include "sbfe/strategy.hpp"

#include "sbfe/error.hpp"

#include <algorithm>
#include <string>

namespace sbfe {

int AdaptiveTree::add_stop() {
  nodes_.push_back(Node{});
  return static_cast<int>(nodes_.size()) - 1;
}

int AdaptiveTree::add_test(int var, int if_false, int if_true) {
  nodes_.push_back(Node{var, if_false, if_true});
  return static_cast<int>(nodes_.size()) - 1;
}

void AdaptiveTree::set_root(int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= nodes_.size()) throw InvalidStrategy("tree root out of range");
  root_ = index;
}

int AdaptiveTree::depth() const {
  auto rec = [&](auto&& self, int index) -> int {
    const Node& nd = node(index);
    if (nd.is_stop()) return 0;
    return 1 + std::max(self(self, nd.if_false), self(self, nd.if_true));
  };
  return rec(rec, root_);
}

void AdaptiveTree::validate(int num_vars) const {
  auto rec = [&](auto&& self, int index, Mask on_path, int depth) -> void {
    if (index < 0 || static_cast<std::size_t>(index) >= nodes_.size()) throw InvalidStrategy("dangling tree child");
    if (depth > num_vars) throw InvalidStrategy("tree deeper than the number of variables");
    const Node& nd = nodes_[static_cast<std::size_t>(index)];
    if (nd.is_stop()) return;
    if (nd.var >= num_vars) throw InvalidStrategy("tree tests variable " + std::to_string(nd.var) + " outside range");
    if (test_bit(on_path, nd.var)) throw InvalidStrategy("tree repeats variable " + std::to_string(nd.var));
    self(self, nd.if_false, on_path | bit(nd.var), depth + 1);
    self(self, nd.if_true, on_path | bit(nd.var), depth + 1);
  };
  rec(rec, root_, 0, 0);
}

bool is_adaptive(const Strategy& strategy) noexcept { return !std::holds_alternative<NonAdaptiveStrategy>(strategy); }

void validate_permutation(const NonAdaptiveStrategy& strategy, int num_vars) {
  if (strategy.order.size() != static_cast<std::size_t>(num_vars)) {
    throw InvalidStrategy("permutation has " + std::to_string(strategy.order.size()) + " entries, expected " +
                          std::to_string(num_vars));
  }
  Mask seen = 0;
  for (int v : strategy.order) {
    if (v < 0 || v >= num_vars) throw InvalidStrategy("permutation entry " + std::to_string(v) + " out of range");
    if (test_bit(seen, v)) throw InvalidStrategy("permutation repeats " + std::to_string(v));
    seen |= bit(v);
  }
}

Simulator::Simulator(const Instance& instance) : instance_(&instance), determiner_(instance.formula()) {}

Mask Simulator::tests_performed(Mask x, const Strategy& strategy) const {
  const int n = instance_->num_vars();
  PartialAssignment pa;
  auto observe = [&](int var) {
    if (var < 0 || var >= n) throw InvalidStrategy("strategy tests variable " + std::to_string(var) + " out of range");
    if (pa.is_tested(var)) throw InvalidStrategy("strategy repeats test of x" + std::to_string(var));
    pa = pa.with(var, test_bit(x, var));
  };
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, NonAdaptiveStrategy>) {
          for (int v : s.order) {
            if (determiner_(pa)) return;
            observe(v);
          }
          if (!determiner_(pa)) throw InvalidStrategy("permutation exhausted before f was determined");
        } else if constexpr (std::is_same_v<S, AdaptiveTree>) {
          int index = s.root();
          while (!determiner_(pa)) {
            const auto& nd = s.node(index);
            if (nd.is_stop()) throw InvalidStrategy("tree stops before f is determined");
            observe(nd.var);
            index = test_bit(x, nd.var) ? nd.if_true : nd.if_false;
          }
        } else {
          while (!determiner_(pa)) {
            const auto next = s(*instance_, pa);
            if (!next) throw InvalidStrategy("policy stops before f is determined");
            observe(*next);
          }
        }
      },
      strategy);
  return pa.tested;
}

CostValue Simulator::cost(Mask x, const Strategy& strategy, Mask free_mask) const {
  if (!instance_->is_exact()) return cost_as_double(x, strategy, free_mask);
  const Mask charged = tests_performed(x, strategy) & ~free_mask;
  const auto& c = instance_->exact_costs();
  Rational total(0);
  for (int v : bits_of(charged)) total += c[static_cast<std::size_t>(v)];
  return total;
}

double Simulator::cost_as_double(Mask x, const Strategy& strategy, Mask free_mask) const {
  const Mask charged = tests_performed(x, strategy) & ~free_mask;
  const auto& c = instance_->costs();
  double total = 0;
  for (int v : bits_of(charged)) total += c[static_cast<std::size_t>(v)];
  return total;
}

CostValue simulate_cost(const Instance& instance, Mask x, const Strategy& strategy) {
  return Simulator(instance).cost(x, strategy);
}

AdaptiveTree materialize(const Instance& instance, const AdaptivePolicy& policy) {
  const int n = instance.num_vars();
  const Determiner determiner(instance.formula());
  AdaptiveTree tree;
  auto build = [&](auto&& self, const PartialAssignment& pa, int depth) -> int {
    if (determiner(pa)) return tree.add_stop();
    if (depth >= n) throw InvalidStrategy("policy exceeded depth n without determining f");
    const auto next = policy(instance, pa);
    if (!next) throw InvalidStrategy("policy stops before f is determined");
    const int v = *next;
    if (v < 0 || v >= n) throw InvalidStrategy("policy returned variable out of range");
    if (pa.is_tested(v)) throw InvalidStrategy("policy repeats test of x" + std::to_string(v));
    const int f = self(self, pa.with(v, false), depth + 1);
    const int t = self(self, pa.with(v, true), depth + 1);
    return tree.add_test(v, f, t);
  };
  tree.set_root(build(build, PartialAssignment{}, 0));
  return tree;
}

}  // namespace sbfe
