#include "sbfe/generators.hpp"

#include "sbfe/error.hpp"

#include <cmath>
#include <string>

namespace sbfe {

namespace {

void check_size(long long n, const char* family) {
  if (n > kMaxVariables) {
    throw SizeExceeded(std::string(family) + " instance would have n=" + std::to_string(n) + " > " +
                       std::to_string(kMaxVariables));
  }
}

Instance uniform_unit(Formula formula) {
  const auto n = static_cast<std::size_t>(num_vars(formula));
  return Instance::exact(std::move(formula), std::vector<Rational>(n, Rational(1)),
                         std::vector<Rational>(n, Rational(1, 2)));
}

int int_param(const GenSpec& spec, const std::string& name) {
  const auto it = spec.params.find(name);
  if (it == spec.params.end()) throw ParameterError(spec.family + " needs parameter '" + name + "'");
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used != it->second.size()) throw ParameterError("");
    return v;
  } catch (const std::exception&) {
    throw ParameterError("parameter '" + name + "' must be an integer, got '" + it->second + "'");
  }
}

Rational rational_param(const GenSpec& spec, const std::string& name, std::optional<Rational> fallback) {
  const auto it = spec.params.find(name);
  if (it == spec.params.end()) {
    if (fallback) return *fallback;
    throw ParameterError(spec.family + " needs parameter '" + name + "'");
  }
  try {
    return parse_rational(it->second);
  } catch (const ParseError&) {
    throw ParameterError("parameter '" + name + "' must be a rational, got '" + it->second + "'");
  }
}

}  // namespace

Instance gen_tribes(int terms, int width) {
  if (terms < 1 || width < 1) throw ParameterError("tribes needs k >= 1 and w >= 1");
  check_size(static_cast<long long>(terms) * width, "tribes");
  std::vector<std::vector<int>> vars(static_cast<std::size_t>(terms));
  for (int j = 0; j < terms; ++j) {
    for (int i = 0; i < width; ++i) vars[static_cast<std::size_t>(j)].push_back(j * width + i);
  }
  return uniform_unit(ReadOnceDnf::from_terms(terms * width, vars).dnf());
}

Instance gen_ucap(int terms, int width) {
  if (terms < 2 || width < 2) throw ParameterError("ucap needs m >= 2 and l >= 2");
  if (width >= terms) throw ParameterError("ucap needs l < m so that (l/m)^(1/(l-1)) < 1");
  check_size(static_cast<long long>(terms) * width, "ucap");
  const int n = terms * width;
  std::vector<std::vector<int>> vars(static_cast<std::size_t>(terms));
  std::vector<double> probs(static_cast<std::size_t>(n));
  const double special = 1.0 / width;
  const double other = std::pow(static_cast<double>(width) / terms, 1.0 / (width - 1));
  for (int j = 0; j < terms; ++j) {
    for (int i = 0; i < width; ++i) {
      const int v = j * width + i;
      vars[static_cast<std::size_t>(j)].push_back(v);
      probs[static_cast<std::size_t>(v)] = i == 0 ? special : other;
    }
  }
  return Instance::floating(ReadOnceDnf::from_terms(n, vars).dnf(), std::vector<double>(static_cast<std::size_t>(n), 1.0),
                            std::move(probs));
}

Instance gen_ucap_for_n(int num_vars) {
  const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(num_vars))));
  if (root * root != num_vars || root % 2 != 0) {
    throw ParameterError("ucap canonical parameters need sqrt(n) to be an even integer");
  }
  return gen_ucap(2 * root, root / 2);
}

Instance gen_geometric_cost(int width) {
  if (width < 1) throw ParameterError("geomcost needs l >= 1");
  check_size(width >= 16 ? (1LL << 20) : (1LL << width) * width, "geomcost");
  const int terms = 1 << width;
  const int n = terms * width;
  std::vector<std::vector<int>> vars(static_cast<std::size_t>(terms));
  std::vector<Rational> costs(static_cast<std::size_t>(n));
  for (int j = 0; j < terms; ++j) {
    for (int i = 0; i < width; ++i) {
      const int v = j * width + i;
      vars[static_cast<std::size_t>(j)].push_back(v);
      costs[static_cast<std::size_t>(v)] = Rational(1L << i);
    }
  }
  return Instance::exact(ReadOnceDnf::from_terms(n, vars).dnf(), std::move(costs),
                         std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, 2)));
}

TreeInstance gen_binary_tree(int depth, const Rational& eps) {
  if (depth < 1) throw ParameterError("bintree needs d >= 1");
  if (eps <= 0 || eps > Rational(1, 2)) throw ParameterError("bintree needs eps in (0, 1/2]");
  if (depth > 5) throw ParameterError("bintree depth " + std::to_string(depth) + " exceeds the variable cap");
  const int n = (2 << depth) - 2;

  TreeInstanceMeta meta;
  meta.depth = depth;
  meta.eps = eps;
  int next = 0;
  std::vector<int> path;
  // Edge at `level` (1 = root edges). Leaf edges become leaves; other edges
  // AND their own variable with the OR of their two child edges.
  auto edge = [&](auto&& self, int level) -> RoNode {
    const int v = next++;
    path.push_back(v);
    RoNode out;
    if (level == depth) {
      meta.leaf_mask |= bit(v);
      meta.leaf_paths.push_back(path);
      out = RoNode::leaf(v);
    } else {
      RoNode left = self(self, level + 1);
      RoNode right = self(self, level + 1);
      out = RoNode::all_of({RoNode::leaf(v), RoNode::any_of({std::move(left), std::move(right)})});
    }
    path.pop_back();
    return out;
  };
  RoNode left = edge(edge, 1);
  RoNode right = edge(edge, 1);
  RoTree tree(n, RoNode::any_of({std::move(left), std::move(right)}));
  meta.internal_mask = full_mask(n) & ~meta.leaf_mask;

  const Rational p = (1 + eps) / 2;
  auto instance = Instance::exact(std::move(tree), std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)),
                                  std::vector<Rational>(static_cast<std::size_t>(n), p));
  return {std::move(instance), std::move(meta)};
}

Instance gen_address(int address_bits, const Rational& shared_cost) {
  if (address_bits < 1) throw ParameterError("address needs d >= 1");
  if (shared_cost <= 0) throw ParameterError("address needs a positive shared cost");
  const int d = address_bits;
  if (d > 6 || (1 << d) + d > kMaxVariables) throw ParameterError("address instance exceeds the variable cap");
  const int terms = 1 << d;
  const int n = terms + d;
  std::vector<DnfFormula::Term> dnf_terms;
  for (int i = 0; i < terms; ++i) {
    DnfFormula::Term t;
    for (int b = 0; b < d; ++b) t.push_back({b, ((i >> b) & 1) == 0});
    t.push_back({d + i, false});
    dnf_terms.push_back(std::move(t));
  }
  std::vector<Rational> costs(static_cast<std::size_t>(n), Rational(1));
  for (int b = 0; b < d; ++b) costs[static_cast<std::size_t>(b)] = shared_cost;
  return Instance::exact(DnfFormula(n, std::move(dnf_terms)), std::move(costs),
                         std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, 2)));
}

GeneratedInstance generate(const GenSpec& spec) {
  if (spec.family == "tribes") return {gen_tribes(int_param(spec, "k"), int_param(spec, "w")), std::nullopt};
  if (spec.family == "ucap") return {gen_ucap(int_param(spec, "m"), int_param(spec, "l")), std::nullopt};
  if (spec.family == "geomcost") return {gen_geometric_cost(int_param(spec, "l")), std::nullopt};
  if (spec.family == "bintree") {
    auto t = gen_binary_tree(int_param(spec, "d"), rational_param(spec, "eps", std::nullopt));
    return {std::move(t.instance), std::move(t.meta)};
  }
  if (spec.family == "address") {
    return {gen_address(int_param(spec, "d"), rational_param(spec, "shared_cost", Rational(1))), std::nullopt};
  }
  throw ParameterError("unknown family '" + spec.family + "'");
}

}  // namespace sbfe
