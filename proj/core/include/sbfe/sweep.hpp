#pragma once

#include "sbfe/gap.hpp"
#include "sbfe/generators.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sbfe {

/// Parameter columns of each family, in CSV order.
std::vector<std::string> family_parameters(const std::string& family);

/// Expands "name=values" axes into GenSpecs (cartesian product, first axis
/// outermost). Values are a comma list ("2,3,4"), an inclusive integer range
/// ("2..4"), or "@other" to copy another axis's current value. An empty list
/// or a descending range yields no specs.
std::vector<GenSpec> expand_grid(const std::string& family,
                                 const std::vector<std::pair<std::string, std::string>>& axes);

struct SweepOptions {
  GapOptions gap;
  /// Rows are independent and may be computed concurrently.
  unsigned threads = 1;
};

/// Header "family,<params>,n,opt_a,opt_n,ratio,alg1_cost,roundrobin_cost,
/// termorder_cost,cost_sorted_cost" plus one row per spec, in spec order.
/// Cells that do not apply are left empty. Monte Carlo rows use
/// derive_seed(seed, row) as the row's seed.
std::string sweep_csv(const std::string& family, const std::vector<GenSpec>& specs, const SweepOptions& options = {});

}  // namespace sbfe
