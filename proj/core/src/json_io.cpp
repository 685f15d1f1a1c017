#include "sbfe/json_io.hpp"

#include "sbfe/error.hpp"

#include <json.hpp>

namespace sbfe {

using Json = nlohmann::ordered_json;

namespace {

std::string dump(const Json& j, int indent) {
  auto out = j.dump(indent < 0 ? -1 : indent);
  if (indent >= 0) out += '\n';
  return out;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

[[noreturn]] void schema(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& obj, const char* name) {
  if (!obj.is_object()) schema(std::string("expected an object holding '") + name + "'");
  const auto it = obj.find(name);
  if (it == obj.end()) schema(std::string("missing field '") + name + "'");
  return *it;
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<int>();
}

bool as_bool(const Json& j, const char* what) {
  if (!j.is_boolean()) schema(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

struct RoKeys {
  using Node = RoNode;
  static constexpr const char* leaf = "leaf";
  static constexpr const char* conj = "and";
  static constexpr const char* disj = "or";
  static constexpr auto kLeaf = RoNode::Kind::Leaf;
  static constexpr auto kConj = RoNode::Kind::And;
  static constexpr auto kDisj = RoNode::Kind::Or;
};

struct TtspKeys {
  using Node = TtspNode;
  static constexpr const char* leaf = "edge";
  static constexpr const char* conj = "series";
  static constexpr const char* disj = "parallel";
  static constexpr auto kLeaf = TtspNode::Kind::Edge;
  static constexpr auto kConj = TtspNode::Kind::Series;
  static constexpr auto kDisj = TtspNode::Kind::Parallel;
};

template <typename K>
Json tree_node_json(const typename K::Node& node) {
  if (node.kind == K::kLeaf) return Json{{K::leaf, node.var}};
  Json kids = Json::array();
  for (const auto& c : node.children) kids.push_back(tree_node_json<K>(c));
  return Json{{node.kind == K::kConj ? K::conj : K::disj, std::move(kids)}};
}

template <typename K>
typename K::Node tree_node_from(const Json& j) {
  if (!j.is_object() || j.size() != 1) schema("tree node must be an object with one key");
  const auto it = j.begin();
  const std::string& key = it.key();
  if (key == K::leaf) return {K::kLeaf, as_int(it.value(), K::leaf), {}};
  const bool is_conj = key == K::conj;
  if (!is_conj && key != K::disj) schema("unknown tree node '" + key + "'");
  if (!it.value().is_array()) schema("children of '" + key + "' must be an array");
  std::vector<typename K::Node> kids;
  for (const auto& c : it.value()) kids.push_back(tree_node_from<K>(c));
  return {is_conj ? K::kConj : K::kDisj, -1, std::move(kids)};
}

Json formula_json(const Formula& formula) {
  return std::visit(
      [](const auto& f) -> Json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, DnfFormula>) {
          Json terms = Json::array();
          for (const auto& t : f.terms()) {
            Json term = Json::array();
            for (const auto& lit : t) term.push_back(Json{{"var", lit.var}, {"neg", lit.negated}});
            terms.push_back(std::move(term));
          }
          return Json{{"kind", "dnf"}, {"terms", std::move(terms)}};
        } else if constexpr (std::is_same_v<F, RoTree>) {
          return Json{{"kind", "rotree"}, {"node", tree_node_json<RoKeys>(f.root())}};
        } else if constexpr (std::is_same_v<F, TtspGraph>) {
          return Json{{"kind", "ttsp"}, {"node", tree_node_json<TtspKeys>(f.root())}};
        } else if constexpr (std::is_same_v<F, TruthTable>) {
          return Json{{"kind", "truth_table"}, {"bits_hex", f.to_hex()}};
        } else {
          return Json{{"kind", "constant"}, {"value", f.value}};
        }
      },
      formula);
}

Formula formula_from(const Json& j, int n) {
  const auto& kind_json = field(j, "kind");
  if (!kind_json.is_string()) schema("formula kind must be a string");
  const auto kind = kind_json.get<std::string>();
  if (kind == "dnf") {
    const auto& terms_json = field(j, "terms");
    if (!terms_json.is_array()) schema("dnf terms must be an array");
    std::vector<DnfFormula::Term> terms;
    for (const auto& tj : terms_json) {
      if (!tj.is_array()) schema("each dnf term must be an array of literals");
      DnfFormula::Term term;
      for (const auto& lj : tj) {
        const auto neg = lj.contains("neg") ? as_bool(lj.at("neg"), "neg") : false;
        term.push_back({as_int(field(lj, "var"), "var"), neg});
      }
      terms.push_back(std::move(term));
    }
    return DnfFormula(n, std::move(terms));
  }
  if (kind == "rotree") return RoTree(n, tree_node_from<RoKeys>(field(j, "node")));
  if (kind == "ttsp") return TtspGraph(n, tree_node_from<TtspKeys>(field(j, "node")));
  if (kind == "truth_table") {
    const auto& hex = field(j, "bits_hex");
    if (!hex.is_string()) schema("bits_hex must be a string");
    return TruthTable::from_hex(n, hex.get<std::string>());
  }
  if (kind == "constant") return ConstantFormula{n, as_bool(field(j, "value"), "value")};
  schema("unknown formula kind '" + kind + "'");
}

Rational exact_value(const Json& j, const char* what) {
  if (!j.is_string()) schema(std::string("exact mode needs ") + what + " as \"num/den\" strings");
  return parse_rational(j.get<std::string>());
}

double float_value(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  schema(std::string(what) + " entries must be numbers or \"num/den\" strings");
}

Json node_json(const AdaptiveTree& tree, int index) {
  const auto& node = tree.node(index);
  if (node.is_stop()) return Json{{"stop", true}};
  return Json{{"test", node.var}, {"if_false", node_json(tree, node.if_false)}, {"if_true", node_json(tree, node.if_true)}};
}

int node_from(AdaptiveTree& tree, const Json& j) {
  if (!j.is_object()) schema("tree node must be an object");
  if (j.contains("stop")) return tree.add_stop();
  const int var = as_int(field(j, "test"), "test");
  const int f = node_from(tree, field(j, "if_false"));
  const int t = node_from(tree, field(j, "if_true"));
  return tree.add_test(var, f, t);
}

Json strategy_json(const NonAdaptiveStrategy& s) { return Json{{"kind", "perm"}, {"order", s.order}}; }
Json strategy_json(const AdaptiveTree& t) { return Json{{"kind", "tree"}, {"node", node_json(t, t.root())}}; }

}  // namespace

std::string instance_to_json(const Instance& instance, int indent) {
  Json j;
  j["n"] = instance.num_vars();
  j["mode"] = to_string(instance.mode());
  j["formula"] = formula_json(instance.formula());
  Json costs = Json::array();
  Json probs = Json::array();
  if (instance.is_exact()) {
    for (const auto& c : instance.exact_costs()) costs.push_back(format_rational(c));
    for (const auto& p : instance.exact_probs()) probs.push_back(format_rational(p));
  } else {
    costs = instance.costs();
    probs = instance.probs();
  }
  j["costs"] = std::move(costs);
  j["probs"] = std::move(probs);
  return dump(j, indent);
}

Instance instance_from_json(std::string_view text) {
  const Json j = parse(text);
  const int n = as_int(field(j, "n"), "n");
  if (n < 0 || n > kMaxVariables) schema("n out of range");
  const auto& mode_json = field(j, "mode");
  const std::string mode = mode_json.is_string() ? mode_json.get<std::string>() : "";
  if (mode != "exact" && mode != "float") schema("mode must be \"exact\" or \"float\"");
  Formula formula = formula_from(field(j, "formula"), n);
  const auto& cj = field(j, "costs");
  const auto& pj = field(j, "probs");
  if (!cj.is_array() || !pj.is_array()) schema("costs and probs must be arrays");
  if (mode == "exact") {
    std::vector<Rational> costs;
    std::vector<Rational> probs;
    for (const auto& c : cj) costs.push_back(exact_value(c, "costs"));
    for (const auto& p : pj) probs.push_back(exact_value(p, "probs"));
    return Instance::exact(std::move(formula), std::move(costs), std::move(probs));
  }
  std::vector<double> costs;
  std::vector<double> probs;
  for (const auto& c : cj) costs.push_back(float_value(c, "costs"));
  for (const auto& p : pj) probs.push_back(float_value(p, "probs"));
  return Instance::floating(std::move(formula), std::move(costs), std::move(probs));
}

std::string strategy_to_json(const NonAdaptiveStrategy& strategy, int indent) {
  return dump(strategy_json(strategy), indent);
}

std::string strategy_to_json(const AdaptiveTree& tree, int indent) { return dump(strategy_json(tree), indent); }

Strategy strategy_from_json(std::string_view text) {
  const Json j = parse(text);
  const auto& kind = field(j, "kind");
  if (kind == "perm") {
    const auto& order = field(j, "order");
    if (!order.is_array()) schema("order must be an array");
    NonAdaptiveStrategy s;
    for (const auto& v : order) s.order.push_back(as_int(v, "order entry"));
    return s;
  }
  if (kind == "tree") {
    AdaptiveTree tree;
    tree.set_root(node_from(tree, field(j, "node")));
    return tree;
  }
  schema("strategy kind must be \"perm\" or \"tree\"");
}

std::string cost_to_json(const CostValue& value, int indent) {
  Json j;
  if (value.is_exact()) {
    j["value"] = format_rational(value.exact());
  } else {
    j["value"] = value.to_double();
  }
  return dump(j, indent);
}

std::string estimate_to_json(const McEstimate& estimate, int indent) {
  Json j{{"value", estimate.mean},
         {"stderr", estimate.stderr_of_mean},
         {"samples", estimate.samples},
         {"seed", estimate.seed}};
  return dump(j, indent);
}

std::string solve_result_to_json(const SolveResult& result, int indent) {
  Json j;
  j["class"] = std::holds_alternative<AdaptiveTree>(result.witness) ? "adaptive" : "nonadaptive";
  j["value"] = format_rational(result.value);
  j["witness"] = std::visit([](const auto& w) { return strategy_json(w); }, result.witness);
  return dump(j, indent);
}

std::string tree_meta_to_json(const TreeInstanceMeta& meta, int indent) {
  std::vector<int> leaves;
  for (int v : bits_of(meta.leaf_mask)) leaves.push_back(v);
  Json j{{"d", meta.depth},
         {"eps", format_rational(meta.eps)},
         {"leaf_edges", leaves},
         {"leaf_mask", meta.leaf_mask},
         {"internal_mask", meta.internal_mask},
         {"leaf_paths", meta.leaf_paths}};
  return dump(j, indent);
}

TreeInstanceMeta tree_meta_from_json(std::string_view text) {
  const Json j = parse(text);
  TreeInstanceMeta meta;
  meta.depth = as_int(field(j, "d"), "d");
  meta.eps = exact_value(field(j, "eps"), "eps");
  const auto& lm = field(j, "leaf_mask");
  const auto& im = field(j, "internal_mask");
  if (!lm.is_number_unsigned() || !im.is_number_unsigned()) schema("masks must be unsigned integers");
  meta.leaf_mask = lm.get<Mask>();
  meta.internal_mask = im.get<Mask>();
  if (j.contains("leaf_paths")) meta.leaf_paths = j.at("leaf_paths").get<std::vector<std::vector<int>>>();
  return meta;
}

}  // namespace sbfe
