#include "sbfe/lemmas.hpp"

#include "sbfe/error.hpp"
#include "sbfe/generators.hpp"
#include "sbfe/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sbfe {

namespace {

constexpr double kSigmas = 4.0;

LemmaStat exact_stat(std::string name, const Rational& value) {
  return {std::move(name), to_double(value), format_rational(value)};
}

LemmaStat float_stat(std::string name, double value) { return {std::move(name), value, {}}; }

Rational binomial(unsigned n, unsigned k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

/// eps = a/b gives p = (b+a)/(2b) and 1-p = (b-a)/(2b); input weights are
/// integers over the common denominator (2b)^n.
struct TreeWeights {
  BigInt one;
  BigInt zero;
  BigInt denom_base;
};

TreeWeights tree_weights(const Rational& eps) {
  const BigInt a = eps.get_num();
  const BigInt b = eps.get_den();
  return {b + a, b - a, 2 * b};
}

BigInt pow_int(const BigInt& base, unsigned exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

/// Integer weight of every alive-leaf set (bit j = leaf j alive) over inputs
/// with at least one alive leaf, plus the common denominator.
struct AliveWeights {
  std::vector<BigInt> by_set;
  BigInt total;
  BigInt denominator;
  int leaves = 0;
};

AliveWeights alive_weights(int depth, const Rational& eps) {
  if (depth > 3) throw SizeExceeded("exhaustive tree checks need d <= 3");
  const auto tree = gen_binary_tree(depth, eps);
  const int n = tree.instance.num_vars();
  const auto w = tree_weights(eps);
  std::vector<BigInt> one_pow(static_cast<std::size_t>(n) + 1);
  std::vector<BigInt> zero_pow(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    one_pow[static_cast<std::size_t>(k)] = pow_int(w.one, static_cast<unsigned>(k));
    zero_pow[static_cast<std::size_t>(k)] = pow_int(w.zero, static_cast<unsigned>(k));
  }
  std::vector<Mask> paths;
  for (const auto& path : tree.meta.leaf_paths) {
    Mask m = 0;
    for (int v : path) m |= bit(v);
    paths.push_back(m);
  }
  AliveWeights out;
  out.leaves = static_cast<int>(paths.size());
  out.by_set.assign(std::size_t{1} << paths.size(), BigInt(0));
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    Mask alive = 0;
    for (std::size_t j = 0; j < paths.size(); ++j) {
      if ((x & paths[j]) == paths[j]) alive |= bit(static_cast<int>(j));
    }
    if (alive == 0) continue;
    const int k = popcount(x);
    out.by_set[alive] += one_pow[static_cast<std::size_t>(k)] * zero_pow[static_cast<std::size_t>(n - k)];
  }
  for (const auto& v : out.by_set) out.total += v;
  out.denominator = pow_int(w.denom_base, static_cast<unsigned>(n));
  return out;
}

/// Integer weight of "first alive leaf is at position l" for l = 1..L.
std::vector<BigInt> first_alive_weights(const AliveWeights& w, const std::vector<int>& order) {
  std::vector<BigInt> out(order.size());
  for (std::size_t set = 1; set < w.by_set.size(); ++set) {
    if (w.by_set[set] == 0) continue;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      if ((set >> order[pos]) & 1U) {
        out[pos] += w.by_set[set];
        break;
      }
    }
  }
  return out;
}

}  // namespace

const LemmaStat* LemmaResult::stat(const std::string& name) const {
  for (const auto& s : stats) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string lemma_result_to_json(const LemmaResult& result, int indent) {
  nlohmann::ordered_json j;
  j["lemma"] = result.id;
  j["trials"] = result.trials;
  j["violations"] = result.violations;
  nlohmann::ordered_json stats = nlohmann::ordered_json::object();
  for (const auto& s : result.stats) {
    if (s.exact.empty() && s.value == std::floor(s.value) && std::abs(s.value) < 9.0e15) {
      stats[s.name] = static_cast<long long>(s.value);
    } else if (s.exact.empty()) {
      stats[s.name] = s.value;
    } else {
      stats[s.name] = s.exact;
    }
  }
  j["stats"] = std::move(stats);
  j["pass"] = result.pass;
  return j.dump(indent) + (indent >= 0 ? "\n" : "");
}

EarthmoverCase earthmover_case(const std::vector<Rational>& p_list, const Rational& p) {
  if (p <= 0) throw HypothesisViolated("earthmover needs p > 0");
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    if (p_list[i] < 0) throw HypothesisViolated("earthmover needs nonnegative p_l");
    if (i > 0 && p_list[i] > p_list[i - 1]) throw HypothesisViolated("earthmover needs p_1 >= p_2 >= ...");
  }
  if (!p_list.empty() && p < p_list.front()) throw HypothesisViolated("earthmover needs p >= p_1");

  EarthmoverCase out;
  Rational sum = 0;
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    sum += p_list[i];
    out.lhs += static_cast<long>(i + 1) * p_list[i];
  }
  out.l_prime = floor_of(sum / p);
  out.rhs = p * make_rational(out.l_prime * (out.l_prime + 1), BigInt(2));
  out.holds = out.lhs >= out.rhs;
  return out;
}

LemmaResult check_earthmover(const std::vector<Rational>& p_list, const Rational& p) {
  const auto c = earthmover_case(p_list, p);
  LemmaResult out;
  out.id = "earthmover";
  out.trials = 1;
  out.violations = c.holds ? 0 : 1;
  out.stats = {exact_stat("l_prime", Rational(c.l_prime)), exact_stat("lhs", c.lhs), exact_stat("rhs", c.rhs)};
  out.pass = c.holds;
  return out;
}

LemmaResult check_earthmover_batch(std::uint64_t trials, std::uint64_t seed, int max_len) {
  if (max_len < 1) throw ParameterError("earthmover batch needs max_len >= 1");
  Rng rng(seed);
  auto draw = [&rng](long lo, long hi) {
    const long num = rng.between(lo, hi);
    const long den = rng.between(1, 30);
    return make_rational(num, den);
  };
  LemmaResult out;
  out.id = "earthmover";
  out.trials = trials;
  Rational min_slack;
  bool have_slack = false;
  std::uint64_t equality_cases = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto len = static_cast<std::size_t>(rng.between(1, max_len));
    std::vector<Rational> list(len);
    Rational p;
    if (rng.below(10) == 0) {
      // The equality case: L copies of p.
      p = draw(1, 60);
      std::fill(list.begin(), list.end(), p);
    } else {
      for (auto& v : list) v = draw(0, 60);
      std::sort(list.begin(), list.end(), [](const Rational& a, const Rational& b) { return a > b; });
      p = list.front() + draw(0, 10);
      if (p == 0) p = 1;
    }
    const auto c = earthmover_case(list, p);
    if (!c.holds) ++out.violations;
    const Rational slack = c.lhs - c.rhs;
    if (slack == 0) ++equality_cases;
    if (!have_slack || slack < min_slack) {
      min_slack = slack;
      have_slack = true;
    }
  }
  out.stats = {exact_stat("min_slack", min_slack), float_stat("equality_cases", static_cast<double>(equality_cases))};
  out.pass = out.violations == 0;
  return out;
}

std::vector<Rational> branching_distribution(int depth, const Rational& eps) {
  if (depth < 0) throw ParameterError("branching depth must be >= 0");
  if (depth > 10) throw SizeExceeded("exact branching law needs d <= 10");
  const Rational q = (1 + eps) / 2;
  const Rational r = 1 - q;
  std::vector<Rational> pmf{Rational(0), Rational(1)};
  for (int h = 0; h < depth; ++h) {
    std::vector<Rational> next(2 * pmf.size() - 1, Rational(0));
    for (std::size_t z = 0; z < pmf.size(); ++z) {
      if (pmf[z] == 0) continue;
      const auto trials = static_cast<unsigned>(2 * z);
      for (unsigned k = 0; k <= trials; ++k) {
        next[k] += pmf[z] * binomial(trials, k) * pow(q, k) * pow(r, trials - k);
      }
    }
    pmf = std::move(next);
  }
  return pmf;
}

std::vector<Rational> branching_distribution_by_edges(int depth, const Rational& eps) {
  if (depth == 0) return {Rational(0), Rational(1)};
  const auto w = alive_weights(depth, eps);
  std::vector<Rational> pmf(static_cast<std::size_t>(w.leaves) + 1, Rational(0));
  Rational alive_total = 0;
  for (std::size_t set = 1; set < w.by_set.size(); ++set) {
    const Rational pr = make_rational(w.by_set[set], w.denominator);
    pmf[static_cast<std::size_t>(std::popcount(set))] += pr;
    alive_total += pr;
  }
  pmf[0] = 1 - alive_total;
  return pmf;
}

LemmaResult check_branching(int depth, const Rational& eps, std::uint64_t samples, std::uint64_t seed) {
  if (depth < 0) throw ParameterError("branching depth must be >= 0");
  if (samples < 1) throw ParameterError("branching check needs samples >= 1");
  LemmaResult out;
  out.id = "branching";
  out.trials = samples;

  const double q = to_double((1 + eps) / 2);
  Rng rng(seed);
  double mean = 0;
  double m2 = 0;
  std::uint64_t survived = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t z = 1;
    for (int h = 0; h < depth && z > 0; ++h) {
      std::uint64_t next = 0;
      for (std::uint64_t i = 0; i < 2 * z; ++i) next += rng.bernoulli(q) ? 1 : 0;
      z = next;
    }
    if (z > 0) ++survived;
    const double delta = static_cast<double>(z) - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (static_cast<double>(z) - mean);
  }
  const auto n = static_cast<double>(samples);
  const double sd = samples > 1 ? std::sqrt(m2 / (n - 1)) : 0.0;
  const double stderr_mean = sd / std::sqrt(n);
  const double survival = static_cast<double>(survived) / n;
  const double survival_sd = samples > 1 ? std::sqrt(survival * (1 - survival) * n / (n - 1)) : 0.0;
  const double stderr_survival = survival_sd / std::sqrt(n);

  const Rational target = pow(1 + eps, static_cast<unsigned>(depth));
  const double target_d = to_double(target);
  const double eps_d = to_double(eps);
  const bool mean_ok = std::abs(mean - target_d) <= kSigmas * stderr_mean;
  const bool survival_ok = survival >= eps_d - kSigmas * stderr_survival;
  if (!mean_ok) ++out.violations;
  if (!survival_ok) ++out.violations;

  out.stats = {float_stat("mean", mean),
               float_stat("stderr_mean", stderr_mean),
               exact_stat("target_mean", target),
               float_stat("survival", survival),
               float_stat("stderr_survival", stderr_survival),
               exact_stat("survival_bound", eps),
               float_stat("tolerance_sigmas", kSigmas)};

  if (depth <= 7) {
    const auto law = branching_distribution(depth, eps);
    out.stats.push_back(exact_stat("exact_survival", 1 - law[0]));
  }
  bool exact_ok = true;
  if (depth <= 2) {
    exact_ok = branching_distribution(depth, eps) == branching_distribution_by_edges(depth, eps);
    out.stats.push_back(float_stat("exact_laws_agree", exact_ok ? 1.0 : 0.0));
    if (!exact_ok) ++out.violations;
  }
  out.pass = mean_ok && survival_ok && exact_ok;
  return out;
}

std::vector<Rational> first_alive_leaf_probs(int depth, const Rational& eps, const std::vector<int>& leaf_order) {
  const auto w = alive_weights(depth, eps);
  std::vector<int> sorted = leaf_order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted.size() != static_cast<std::size_t>(w.leaves) || sorted[i] != static_cast<int>(i)) {
      throw ParameterError("leaf order must be a permutation of the leaves");
    }
  }
  std::vector<Rational> out;
  for (const auto& weight : first_alive_weights(w, leaf_order)) out.push_back(make_rational(weight, w.total));
  return out;
}

LemmaResult check_leaf_monotone(int depth, const Rational& eps) {
  const auto w = alive_weights(depth, eps);
  std::vector<int> order(static_cast<std::size_t>(w.leaves));
  std::iota(order.begin(), order.end(), 0);

  // Expected leaf cost given f = 1 is sum_l l * weight_l / total.
  BigInt best;
  bool have_best = false;
  std::vector<std::vector<int>> minimizers;
  std::uint64_t orders = 0;
  do {
    ++orders;
    const auto firsts = first_alive_weights(w, order);
    BigInt cost = 0;
    for (std::size_t l = 0; l < firsts.size(); ++l) cost += firsts[l] * static_cast<unsigned long>(l + 1);
    if (!have_best || cost < best) {
      best = cost;
      have_best = true;
      minimizers.clear();
    }
    if (cost == best) minimizers.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));

  LemmaResult out;
  out.id = "leaf_monotone";
  out.trials = minimizers.size();
  for (const auto& m : minimizers) {
    const auto firsts = first_alive_weights(w, m);
    for (std::size_t l = 1; l < firsts.size(); ++l) {
      if (firsts[l] > firsts[l - 1]) {
        ++out.violations;
        break;
      }
    }
  }
  out.stats = {float_stat("orders", static_cast<double>(orders)),
               float_stat("minimizers", static_cast<double>(minimizers.size())),
               exact_stat("pr_alive", make_rational(w.total, w.denominator)),
               exact_stat("opt_conditional_leaf_cost", make_rational(best, w.total))};
  const auto firsts = first_alive_weights(w, minimizers.front());
  for (std::size_t l = 0; l < firsts.size(); ++l) {
    out.stats.push_back(exact_stat("p_" + std::to_string(l + 1), make_rational(firsts[l], w.total)));
  }
  out.pass = out.violations == 0;
  return out;
}

}  // namespace sbfe
