#pragma once

#include "sbfe/expected_cost.hpp"
#include "sbfe/generators.hpp"
#include "sbfe/optimal.hpp"

#include <string>
#include <string_view>

namespace sbfe {

/// Instance file format. Exact instances write costs/probs as "num/den"
/// strings; float instances as JSON numbers. `indent < 0` gives the compact
/// canonical form used for digests.
std::string instance_to_json(const Instance& instance, int indent = 2);
/// Throws ParseError on malformed JSON or schema violations, and the usual
/// InvalidFormula / InvalidInstance on semantic ones.
Instance instance_from_json(std::string_view text);

std::string strategy_to_json(const NonAdaptiveStrategy& strategy, int indent = 2);
std::string strategy_to_json(const AdaptiveTree& tree, int indent = 2);
/// Returns a NonAdaptiveStrategy or an AdaptiveTree. Throws ParseError.
Strategy strategy_from_json(std::string_view text);

/// {"value": "num/den"} or {"value": x} for float costs.
std::string cost_to_json(const CostValue& value, int indent = 2);
/// {"value", "stderr", "samples", "seed"}.
std::string estimate_to_json(const McEstimate& estimate, int indent = 2);

/// {"class", "value", "witness"} with the witness in strategy format.
std::string solve_result_to_json(const SolveResult& result, int indent = 2);

std::string tree_meta_to_json(const TreeInstanceMeta& meta, int indent = 2);
TreeInstanceMeta tree_meta_from_json(std::string_view text);

}  // namespace sbfe
