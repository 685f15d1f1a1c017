#pragma once

#include "sbfe/instance.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sbfe {

/// Read-once DNF with k terms of width w; term j owns [j*w, (j+1)*w).
/// Unit costs, p = 1/2.
Instance gen_tribes(int terms, int width);

/// m terms of width l. In each term the first variable has p = 1/l and the
/// others p = (l/m)^(1/(l-1)), so every term is true with probability 1/m.
/// Unit costs; float mode since the probabilities are irrational in general.
Instance gen_ucap(int terms, int width);

/// gen_ucap with m = 2 sqrt(n), l = sqrt(n)/2; n must make both integral.
Instance gen_ucap_for_n(int num_vars);

/// m = 2^l terms of width l, p = 1/2, the i-th variable of each term costs 2^(i-1).
Instance gen_geometric_cost(int width);

struct TreeInstanceMeta {
  int depth = 0;
  Rational eps;
  Mask leaf_mask = 0;
  Mask internal_mask = 0;
  /// Edge variables on each root-to-leaf path, leaves left to right.
  std::vector<std::vector<int>> leaf_paths;
};

struct TreeInstance {
  Instance instance;
  TreeInstanceMeta meta;
};

/// Complete binary tree of depth d with n = 2*2^d - 2 edge variables numbered
/// in preorder; f = 1 iff some leaf is alive (its whole root path is true).
/// Unit costs, p_i = (1 + eps)/2, eps in (0, 1/2].
TreeInstance gen_binary_tree(int depth, const Rational& eps);

/// Address function: variables [0, d) are shared address bits, [d, d + 2^d)
/// dedicated. Term i = (address bits matching i, a0 the low bit) AND y_i.
/// Dedicated tests cost 1, shared tests `shared_cost`; p = 1/2.
Instance gen_address(int address_bits, const Rational& shared_cost);

/// Family tag plus named parameters, as given on the command line.
struct GenSpec {
  std::string family;
  std::map<std::string, std::string> params;
};

struct GeneratedInstance {
  Instance instance;
  std::optional<TreeInstanceMeta> meta;
};

/// Families: tribes(k, w), ucap(m, l), geomcost(l), bintree(d, eps),
/// address(d, shared_cost = 1). Throws ParameterError on unknown or missing parameters.
GeneratedInstance generate(const GenSpec& spec);

}  // namespace sbfe
