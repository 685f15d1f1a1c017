#pragma once

#include "sbfe/determination.hpp"
#include "sbfe/instance.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace sbfe {

/// Fixed test order; testing stops as soon as f is determined.
struct NonAdaptiveStrategy {
  std::vector<int> order;

  friend bool operator==(const NonAdaptiveStrategy&, const NonAdaptiveStrategy&) = default;
};

/// Decision tree stored as an arena of nodes. A node with var < 0 is Stop.
class AdaptiveTree {
 public:
  struct Node {
    int var = -1;
    int if_false = -1;
    int if_true = -1;

    bool is_stop() const noexcept { return var < 0; }
  };

  /// A tree that is a single Stop node.
  AdaptiveTree() : nodes_{Node{}}, root_(0) {}

  int add_stop();
  int add_test(int var, int if_false, int if_true);
  void set_root(int index);

  int root() const noexcept { return root_; }
  const Node& node(int index) const { return nodes_.at(static_cast<std::size_t>(index)); }
  std::size_t size() const noexcept { return nodes_.size(); }
  /// Longest root-to-Stop path, counted in tests.
  int depth() const;

  /// Checks variable ranges, child links and that no variable repeats along a path.
  void validate(int num_vars) const;

 private:
  std::vector<Node> nodes_;
  int root_;
};

/// Lazy adaptive strategy: next test for the current observations, or
/// nullopt to stop.
using AdaptivePolicy = std::function<std::optional<int>(const Instance&, const PartialAssignment&)>;

using Strategy = std::variant<NonAdaptiveStrategy, AdaptiveTree, AdaptivePolicy>;

bool is_adaptive(const Strategy& strategy) noexcept;

/// Throws InvalidStrategy unless `order` is a permutation of [0, n).
void validate_permutation(const NonAdaptiveStrategy& strategy, int num_vars);

/// Runs strategies against concrete inputs, reusing one Determiner.
class Simulator {
 public:
  explicit Simulator(const Instance& instance);

  /// Variables tested on input x before f(x) is determined. Throws
  /// InvalidStrategy if a policy/tree repeats a test or stops early.
  Mask tests_performed(Mask x, const Strategy& strategy) const;

  /// Sum of costs of tested variables outside `free_mask`.
  CostValue cost(Mask x, const Strategy& strategy, Mask free_mask = 0) const;
  double cost_as_double(Mask x, const Strategy& strategy, Mask free_mask = 0) const;

  const Instance& instance() const noexcept { return *instance_; }
  const Determiner& determiner() const noexcept { return determiner_; }

 private:
  const Instance* instance_;
  Determiner determiner_;
};

CostValue simulate_cost(const Instance& instance, Mask x, const Strategy& strategy);

/// Expands a policy into an explicit tree by exploring every outcome.
AdaptiveTree materialize(const Instance& instance, const AdaptivePolicy& policy);

}  // namespace sbfe
