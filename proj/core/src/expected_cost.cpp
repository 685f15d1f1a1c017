#include "sbfe/expected_cost.hpp"

#include "sbfe/error.hpp"
#include "sbfe/rng.hpp"

#include <cmath>
#include <string>
#include <thread>
#include <unordered_map>

namespace sbfe {

namespace {

void check_exact_size(const Instance& instance) {
  if (!instance.is_exact()) throw ModeMismatch("exact expected cost needs an exact-mode instance");
  if (instance.num_vars() > kExactEvaluationCap) {
    throw SizeExceeded("exact expected cost capped at n=" + std::to_string(kExactEvaluationCap));
  }
}

// Walks the strategy's branching structure over observed outcomes.
class PrefixRecursion {
 public:
  PrefixRecursion(const Instance& instance, Mask free_mask)
      : instance_(instance),
        determiner_(instance.formula()),
        costs_(instance.exact_costs()),
        probs_(instance.exact_probs()),
        free_(free_mask) {}

  Rational run(const Strategy& strategy) {
    total_ = 0;
    std::visit([&](const auto& s) { start(s); }, strategy);
    return total_;
  }

 private:
  void charge(int var, const Rational& reach) {
    if (!test_bit(free_, var)) total_ += costs_[static_cast<std::size_t>(var)] * reach;
  }

  void check_new(const PartialAssignment& pa, int var) const {
    if (var < 0 || var >= instance_.num_vars()) throw InvalidStrategy("strategy variable out of range");
    if (pa.is_tested(var)) throw InvalidStrategy("strategy repeats test of x" + std::to_string(var));
  }

  void start(const NonAdaptiveStrategy& s) {
    validate_permutation(s, instance_.num_vars());
    perm(s.order, 0, {}, Rational(1));
  }

  void perm(const std::vector<int>& order, std::size_t k, const PartialAssignment& pa, const Rational& reach) {
    if (determiner_(pa)) return;
    const int v = order[k];
    charge(v, reach);
    const auto& p = probs_[static_cast<std::size_t>(v)];
    perm(order, k + 1, pa.with(v, true), reach * p);
    perm(order, k + 1, pa.with(v, false), reach * (1 - p));
  }

  void start(const AdaptiveTree& s) { tree(s, s.root(), {}, Rational(1)); }

  void tree(const AdaptiveTree& t, int index, const PartialAssignment& pa, const Rational& reach) {
    if (determiner_(pa)) return;
    const auto& nd = t.node(index);
    if (nd.is_stop()) throw InvalidStrategy("tree stops before f is determined");
    check_new(pa, nd.var);
    charge(nd.var, reach);
    const auto& p = probs_[static_cast<std::size_t>(nd.var)];
    tree(t, nd.if_true, pa.with(nd.var, true), reach * p);
    tree(t, nd.if_false, pa.with(nd.var, false), reach * (1 - p));
  }

  void start(const AdaptivePolicy& s) { policy(s, {}, Rational(1)); }

  void policy(const AdaptivePolicy& s, const PartialAssignment& pa, const Rational& reach) {
    if (determiner_(pa)) return;
    const auto next = s(instance_, pa);
    if (!next) throw InvalidStrategy("policy stops before f is determined");
    check_new(pa, *next);
    charge(*next, reach);
    const auto& p = probs_[static_cast<std::size_t>(*next)];
    policy(s, pa.with(*next, true), reach * p);
    policy(s, pa.with(*next, false), reach * (1 - p));
  }

  const Instance& instance_;
  Determiner determiner_;
  const std::vector<Rational>& costs_;
  const std::vector<Rational>& probs_;
  Mask free_;
  Rational total_;
};

// Pr(x) split as low-half table times high-half table.
class InputProbabilities {
 public:
  explicit InputProbabilities(const Instance& instance) {
    const auto& p = instance.exact_probs();
    const int n = instance.num_vars();
    low_bits_ = n / 2;
    low_ = table(p, 0, low_bits_);
    high_ = table(p, low_bits_, n);
  }

  Rational operator()(Mask x) const {
    return low_[x & full_mask(low_bits_)] * high_[x >> low_bits_];
  }

 private:
  static std::vector<Rational> table(const std::vector<Rational>& p, int from, int to) {
    std::vector<Rational> out{Rational(1)};
    for (int i = from; i < to; ++i) {
      const auto& pi = p[static_cast<std::size_t>(i)];
      std::vector<Rational> next(out.size() * 2);
      for (std::size_t m = 0; m < out.size(); ++m) {
        next[m] = out[m] * (1 - pi);
        next[m + out.size()] = out[m] * pi;
      }
      out.swap(next);
    }
    return out;
  }

  int low_bits_ = 0;
  std::vector<Rational> low_;
  std::vector<Rational> high_;
};

}  // namespace

Rational expected_cost_exact(const Instance& instance, const Strategy& strategy, Mask free_mask) {
  check_exact_size(instance);
  return PrefixRecursion(instance, free_mask).run(strategy);
}

Rational expected_cost_by_enumeration(const Instance& instance, const Strategy& strategy, Mask free_mask) {
  check_exact_size(instance);
  if (const auto* perm = std::get_if<NonAdaptiveStrategy>(&strategy)) validate_permutation(*perm, instance.num_vars());
  const Simulator sim(instance);
  const InputProbabilities prob(instance);
  const std::uint64_t inputs = std::uint64_t{1} << instance.num_vars();
  // Group inputs by the set of charged tests, then price each set once.
  std::unordered_map<Mask, Rational> weight_by_tests;
  for (std::uint64_t x = 0; x < inputs; ++x) {
    const Mask charged = sim.tests_performed(x, strategy) & ~free_mask;
    weight_by_tests[charged] += prob(x);
  }
  const auto& c = instance.exact_costs();
  Rational total(0);
  for (const auto& [tests, weight] : weight_by_tests) {
    Rational cost(0);
    for (int v : bits_of(tests)) cost += c[static_cast<std::size_t>(v)];
    total += weight * cost;
  }
  return total;
}

McEstimate expected_cost_mc(const Instance& instance, const Strategy& strategy, std::uint64_t samples,
                            std::uint64_t seed, unsigned workers, Mask free_mask) {
  if (samples == 0) throw ParameterError("Monte Carlo needs at least one sample");
  if (workers == 0) throw ParameterError("Monte Carlo needs at least one worker");
  if (const auto* perm = std::get_if<NonAdaptiveStrategy>(&strategy)) validate_permutation(*perm, instance.num_vars());

  struct Partial {
    std::uint64_t count = 0;
    double mean = 0;
    double m2 = 0;
    std::exception_ptr error;
  };
  std::vector<Partial> parts(workers);
  const Simulator sim(instance);
  const auto& p = instance.probs();
  const int n = instance.num_vars();

  auto run_worker = [&](unsigned w) {
    Partial& part = parts[w];
    try {
      const std::uint64_t chunk = samples / workers + (w < samples % workers ? 1 : 0);
      Rng rng(derive_seed(seed, w));
      for (std::uint64_t s = 0; s < chunk; ++s) {
        Mask x = 0;
        for (int i = 0; i < n; ++i) {
          if (rng.bernoulli(p[static_cast<std::size_t>(i)])) x |= bit(i);
        }
        const double cost = sim.cost_as_double(x, strategy, free_mask);
        ++part.count;
        const double delta = cost - part.mean;
        part.mean += delta / static_cast<double>(part.count);
        part.m2 += delta * (cost - part.mean);
      }
    } catch (...) {
      part.error = std::current_exception();
    }
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
    for (auto& t : threads) t.join();
  }

  // Chan et al. pairwise merge, always in worker order.
  Partial total;
  for (const auto& part : parts) {
    if (part.error) std::rethrow_exception(part.error);
    if (part.count == 0) continue;
    const auto na = static_cast<double>(total.count);
    const auto nb = static_cast<double>(part.count);
    const double delta = part.mean - total.mean;
    const double combined = na + nb;
    total.mean += delta * nb / combined;
    total.m2 += part.m2 + delta * delta * na * nb / combined;
    total.count += part.count;
  }

  McEstimate out;
  out.mean = total.mean;
  out.samples = samples;
  out.seed = seed;
  out.workers = workers;
  if (samples > 1) {
    const double variance = total.m2 / static_cast<double>(samples - 1);
    out.stderr_of_mean = std::sqrt(std::max(0.0, variance) / static_cast<double>(samples));
  }
  return out;
}

}  // namespace sbfe
