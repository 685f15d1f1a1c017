#include "sbfe/instance.hpp"

#include "sbfe/error.hpp"

#include <algorithm>
#include <charconv>
#include <string>

namespace sbfe {

const char* to_string(ArithmeticMode mode) noexcept { return mode == ArithmeticMode::Exact ? "exact" : "float"; }

namespace {

void check_lengths(const Formula& formula, std::size_t costs, std::size_t probs) {
  const auto n = static_cast<std::size_t>(num_vars(formula));
  if (costs != n || probs != n) {
    throw InvalidInstance("instance over n=" + std::to_string(n) + " has " + std::to_string(costs) + " costs and " +
                          std::to_string(probs) + " probabilities");
  }
}

}  // namespace

Instance Instance::exact(Formula formula, std::vector<Rational> costs, std::vector<Rational> probs) {
  check_lengths(formula, costs.size(), probs.size());
  Instance out(std::move(formula), ArithmeticMode::Exact);
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (costs[i] <= 0) throw InvalidInstance("cost of x" + std::to_string(i) + " must be positive");
    if (probs[i] <= 0 || probs[i] >= 1) {
      throw InvalidInstance("probability of x" + std::to_string(i) + " must lie strictly in (0, 1)");
    }
    out.costs_.push_back(costs[i].get_d());
    out.probs_.push_back(probs[i].get_d());
  }
  out.exact_costs_ = std::move(costs);
  out.exact_probs_ = std::move(probs);
  return out;
}

Instance Instance::floating(Formula formula, std::vector<double> costs, std::vector<double> probs) {
  check_lengths(formula, costs.size(), probs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!(costs[i] > 0)) throw InvalidInstance("cost of x" + std::to_string(i) + " must be positive");
    if (!(probs[i] > 0 && probs[i] < 1)) {
      throw InvalidInstance("probability of x" + std::to_string(i) + " must lie strictly in (0, 1)");
    }
  }
  Instance out(std::move(formula), ArithmeticMode::Float);
  out.costs_ = std::move(costs);
  out.probs_ = std::move(probs);
  return out;
}

const std::vector<Rational>& Instance::exact_costs() const {
  if (!is_exact()) throw ModeMismatch("exact costs requested from a float instance");
  return exact_costs_;
}

const std::vector<Rational>& Instance::exact_probs() const {
  if (!is_exact()) throw ModeMismatch("exact probabilities requested from a float instance");
  return exact_probs_;
}

bool Instance::has_unit_costs() const {
  if (is_exact()) {
    return std::all_of(exact_costs_.begin(), exact_costs_.end(), [](const Rational& c) { return c == 1; });
  }
  return std::all_of(costs_.begin(), costs_.end(), [](double c) { return c == 1.0; });
}

bool Instance::has_uniform_probs() const {
  if (is_exact()) {
    const Rational half(1, 2);
    return std::all_of(exact_probs_.begin(), exact_probs_.end(), [&](const Rational& p) { return p == half; });
  }
  return std::all_of(probs_.begin(), probs_.end(), [](double p) { return p == 0.5; });
}

Instance Instance::scaled_costs(const Rational& factor) const {
  if (factor <= 0) throw ParameterError("cost scale factor must be positive");
  if (is_exact()) {
    auto costs = exact_costs_;
    for (auto& c : costs) c *= factor;
    return exact(formula_, std::move(costs), exact_probs_);
  }
  auto costs = costs_;
  for (auto& c : costs) c *= factor.get_d();
  return floating(formula_, std::move(costs), probs_);
}

Instance Instance::with_formula(Formula formula) const {
  if (sbfe::num_vars(formula) != num_vars()) throw InvalidInstance("replacement formula changes n");
  if (is_exact()) return exact(std::move(formula), exact_costs_, exact_probs_);
  return floating(std::move(formula), costs_, probs_);
}

const Rational& CostValue::exact() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw ModeMismatch("exact value requested from a float cost");
}

double CostValue::to_double() const noexcept {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->get_d();
  return std::get<double>(value_);
}

std::string CostValue::to_string() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return format_rational(*r);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(value_));
  return std::string(buf, res.ptr);
}

Rational input_probability(const Instance& instance, Mask x) {
  const auto& p = instance.exact_probs();
  Rational out(1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (test_bit(x, static_cast<int>(i))) {
      out *= p[i];
    } else {
      out *= 1 - p[i];
    }
  }
  return out;
}

}  // namespace sbfe
