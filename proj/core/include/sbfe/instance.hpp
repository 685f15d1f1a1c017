#pragma once

#include "sbfe/formula.hpp"
#include "sbfe/rational.hpp"

#include <string>
#include <variant>
#include <vector>

namespace sbfe {

enum class ArithmeticMode { Exact, Float };

const char* to_string(ArithmeticMode mode) noexcept;

/// A formula with per-variable test costs c_i > 0 and truth probabilities
/// 0 < p_i < 1. Exact instances keep rationals and mirror them as doubles;
/// float instances have doubles only.
class Instance {
 public:
  /// Throws InvalidInstance on length mismatch or out-of-range values.
  static Instance exact(Formula formula, std::vector<Rational> costs, std::vector<Rational> probs);
  static Instance floating(Formula formula, std::vector<double> costs, std::vector<double> probs);

  const Formula& formula() const noexcept { return formula_; }
  int num_vars() const noexcept { return sbfe::num_vars(formula_); }
  ArithmeticMode mode() const noexcept { return mode_; }
  bool is_exact() const noexcept { return mode_ == ArithmeticMode::Exact; }

  /// Exact values; throws ModeMismatch on float instances.
  const std::vector<Rational>& exact_costs() const;
  const std::vector<Rational>& exact_probs() const;

  const std::vector<double>& costs() const noexcept { return costs_; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  bool has_unit_costs() const;
  bool has_uniform_probs() const;

  /// Same instance with costs multiplied by `factor` (> 0).
  Instance scaled_costs(const Rational& factor) const;

  /// Same costs and probabilities on a different formula over the same n.
  Instance with_formula(Formula formula) const;

 private:
  Instance(Formula formula, ArithmeticMode mode) : formula_(std::move(formula)), mode_(mode) {}

  Formula formula_;
  ArithmeticMode mode_;
  std::vector<Rational> exact_costs_;
  std::vector<Rational> exact_probs_;
  std::vector<double> costs_;
  std::vector<double> probs_;
};

/// An expected (or per-input) cost: exact rational or float, tagged by mode.
class CostValue {
 public:
  CostValue() : value_(Rational(0)) {}
  CostValue(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  CostValue(double value) : value_(value) {}               // NOLINT(google-explicit-constructor)

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  /// Throws ModeMismatch when the value is a float.
  const Rational& exact() const;
  double to_double() const noexcept;
  /// "num/den" for exact values, shortest round-trip decimal otherwise.
  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
};

/// Probability of the full input x under independent Bernoulli(p_i).
Rational input_probability(const Instance& instance, Mask x);

}  // namespace sbfe
