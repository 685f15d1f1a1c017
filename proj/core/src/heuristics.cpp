#include "sbfe/heuristics.hpp"

#include "sbfe/error.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

namespace sbfe {

namespace {

// Float instances are ordered on the exact binary values of their doubles.
std::vector<Rational> as_rationals(const std::vector<double>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

}  // namespace

std::vector<TermStats> term_stats(const Instance& instance) {
  const ReadOnceDnf dnf = require_read_once_dnf(instance.formula());
  const auto c = instance.is_exact() ? instance.exact_costs() : as_rationals(instance.costs());
  const auto p = instance.is_exact() ? instance.exact_probs() : as_rationals(instance.probs());
  std::vector<TermStats> out;
  out.reserve(dnf.num_terms());
  for (std::size_t j = 0; j < dnf.num_terms(); ++j) {
    TermStats s;
    s.term = j;
    s.order = dnf.term_vars(j);
    std::vector<Rational> ratio(static_cast<std::size_t>(instance.num_vars()));
    for (int v : s.order) {
      const auto i = static_cast<std::size_t>(v);
      ratio[i] = c[i] / (1 - p[i]);
    }
    std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
      const auto& ra = ratio[static_cast<std::size_t>(a)];
      const auto& rb = ratio[static_cast<std::size_t>(b)];
      return ra != rb ? ra < rb : a < b;
    });
    Rational reach(1);
    s.expected_cost = 0;
    for (int v : s.order) {
      const auto i = static_cast<std::size_t>(v);
      s.expected_cost += c[i] * reach;
      reach *= p[i];
    }
    s.truth_prob = reach;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TermStats> ordered_terms(const Instance& instance) {
  auto stats = term_stats(instance);
  std::vector<Rational> key;
  key.reserve(stats.size());
  for (const auto& s : stats) key.push_back(s.expected_cost / s.truth_prob);
  std::vector<std::size_t> idx(stats.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
  std::vector<TermStats> out;
  out.reserve(stats.size());
  for (auto i : idx) out.push_back(std::move(stats[i]));
  return out;
}

AdaptivePolicy boros_unluyurt(const Instance& instance) {
  auto terms = std::make_shared<const std::vector<TermStats>>(ordered_terms(instance));
  return [terms](const Instance&, const PartialAssignment& pa) -> std::optional<int> {
    for (const auto& t : *terms) {
      const auto falsified = std::any_of(t.order.begin(), t.order.end(),
                                         [&](int v) { return pa.is_tested(v) && !pa.value(v); });
      if (falsified) continue;
      for (int v : t.order) {
        if (!pa.is_tested(v)) return v;
      }
      return std::nullopt;  // every variable of this term tested true
    }
    return std::nullopt;  // all terms falsified
  };
}

int algorithm1_threshold(int num_vars) {
  if (num_vars <= 1) return 0;
  const auto sq = static_cast<std::uint64_t>(num_vars) * static_cast<std::uint64_t>(num_vars);
  return static_cast<int>(std::bit_width(sq - 1));
}

NonAdaptiveStrategy algorithm1(const Instance& instance) {
  require_read_once_dnf(instance.formula());
  if (!instance.has_unit_costs() || !instance.has_uniform_probs()) {
    throw PreconditionViolated("algorithm1 needs unit costs and p_i = 1/2");
  }
  const int n = instance.num_vars();
  const auto tau = static_cast<std::size_t>(algorithm1_threshold(n));
  auto terms = term_stats(instance);
  // Under unit costs and p = 1/2, C/P order is order by length.
  std::stable_sort(terms.begin(), terms.end(),
                   [](const TermStats& a, const TermStats& b) { return a.order.size() < b.order.size(); });
  NonAdaptiveStrategy out;
  Mask placed = 0;
  for (const auto& t : terms) {
    const std::size_t take = std::min(tau, t.order.size());
    for (std::size_t k = 0; k < take; ++k) {
      out.order.push_back(t.order[k]);
      placed |= bit(t.order[k]);
    }
  }
  for (const auto& t : terms) {
    for (int v : t.order) {
      if (!test_bit(placed, v)) {
        out.order.push_back(v);
        placed |= bit(v);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!test_bit(placed, v)) out.order.push_back(v);
  }
  return out;
}

NonAdaptiveStrategy round_robin(const Instance& instance) {
  const auto terms = ordered_terms(instance);
  NonAdaptiveStrategy out;
  Mask placed = 0;
  std::size_t longest = 0;
  for (const auto& t : terms) longest = std::max(longest, t.order.size());
  for (std::size_t r = 0; r < longest; ++r) {
    for (const auto& t : terms) {
      if (r < t.order.size()) {
        out.order.push_back(t.order[r]);
        placed |= bit(t.order[r]);
      }
    }
  }
  for (int v = 0; v < instance.num_vars(); ++v) {
    if (!test_bit(placed, v)) out.order.push_back(v);
  }
  return out;
}

NonAdaptiveStrategy term_order(const Instance& instance) {
  const auto terms = ordered_terms(instance);
  NonAdaptiveStrategy out;
  Mask placed = 0;
  for (const auto& t : terms) {
    for (int v : t.order) {
      out.order.push_back(v);
      placed |= bit(v);
    }
  }
  for (int v = 0; v < instance.num_vars(); ++v) {
    if (!test_bit(placed, v)) out.order.push_back(v);
  }
  return out;
}

NonAdaptiveStrategy increasing_cost(const Instance& instance) {
  NonAdaptiveStrategy out;
  out.order.resize(static_cast<std::size_t>(instance.num_vars()));
  std::iota(out.order.begin(), out.order.end(), 0);
  if (instance.is_exact()) {
    const auto& c = instance.exact_costs();
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](int a, int b) { return c[static_cast<std::size_t>(a)] < c[static_cast<std::size_t>(b)]; });
  } else {
    const auto& c = instance.costs();
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](int a, int b) { return c[static_cast<std::size_t>(a)] < c[static_cast<std::size_t>(b)]; });
  }
  return out;
}

}  // namespace sbfe
