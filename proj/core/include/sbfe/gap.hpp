#pragma once

#include "sbfe/expected_cost.hpp"
#include "sbfe/optimal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sbfe {

/// Names used on the command line and in reports.
inline constexpr const char* kHeuristicNames[] = {"bu", "alg1", "roundrobin", "termorder", "cost_sorted"};

/// Builds the named heuristic. Throws NotReadOnceDnf / PreconditionViolated
/// when it does not apply, ParameterError for an unknown name.
Strategy make_heuristic(const Instance& instance, const std::string& name);

struct HeuristicCost {
  std::string name;
  bool adaptive = false;
  CostValue cost;
  /// Monte Carlo only.
  std::optional<double> stderr_of_mean;
};

struct GapReport {
  std::string digest;
  /// "exact" or "mc".
  std::string mode;
  /// Absent in Monte Carlo mode.
  std::optional<Rational> opt_a;
  std::optional<Rational> opt_n;
  /// opt_n / opt_a, with 0/0 reported as 1.
  std::optional<Rational> ratio;
  /// Applicable heuristics only, in kHeuristicNames order.
  std::vector<HeuristicCost> heuristics;

  const HeuristicCost* heuristic(const std::string& name) const;
};

struct GapOptions {
  bool monte_carlo = false;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  SolverLimits limits;
};

/// 16 hex digits of FNV-1a over the compact instance JSON.
std::string instance_digest(const Instance& instance);

/// Exact mode: OPT_A, OPT_N, their ratio and every applicable heuristic's
/// exact cost. Monte Carlo mode: heuristic estimates only, heuristic h drawing
/// from derive_seed(seed, h).
GapReport gap_report(const Instance& instance, const GapOptions& options = {});

/// Exact-mode sanity: opt_a <= every heuristic, opt_n <= every non-adaptive
/// one, opt_a <= opt_n. Returns a description of each violation.
std::vector<std::string> gap_report_violations(const GapReport& report);

std::string gap_report_to_json(const GapReport& report, int indent = 2);

}  // namespace sbfe
