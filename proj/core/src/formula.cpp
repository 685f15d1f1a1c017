#include "sbfe/formula.hpp"

#include "sbfe/error.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace sbfe {

namespace {

void check_num_vars(int n) {
  if (n < 0 || n > kMaxVariables) {
    throw SizeExceeded("formulas support at most " + std::to_string(kMaxVariables) + " variables, got " +
                       std::to_string(n));
  }
}

void check_var(int var, int n, const char* what) {
  if (var < 0 || var >= n) {
    throw InvalidFormula(std::string(what) + " variable " + std::to_string(var) + " outside [0, " +
                         std::to_string(n) + ")");
  }
}

// RoNode and TtspNode share a shape: a leaf kind, a conjunctive kind and a
// disjunctive kind. These traits let restriction and validation be written once.
template <typename Node>
struct NodeTraits;

template <>
struct NodeTraits<RoNode> {
  static constexpr auto kLeaf = RoNode::Kind::Leaf;
  static constexpr auto kConj = RoNode::Kind::And;
  static constexpr auto kDisj = RoNode::Kind::Or;
  static constexpr const char* kName = "rotree";
};

template <>
struct NodeTraits<TtspNode> {
  static constexpr auto kLeaf = TtspNode::Kind::Edge;
  static constexpr auto kConj = TtspNode::Kind::Series;
  static constexpr auto kDisj = TtspNode::Kind::Parallel;
  static constexpr const char* kName = "ttsp";
};

template <typename Node>
void validate_node(const Node& node, int n, Mask& seen) {
  using T = NodeTraits<Node>;
  if (node.kind == T::kLeaf) {
    check_var(node.var, n, T::kName);
    if (test_bit(seen, node.var)) {
      throw InvalidFormula(std::string(T::kName) + " uses variable " + std::to_string(node.var) + " twice");
    }
    seen |= bit(node.var);
    if (!node.children.empty()) throw InvalidFormula(std::string(T::kName) + " leaf with children");
    return;
  }
  if (node.children.size() < 2) {
    throw InvalidFormula(std::string(T::kName) + " internal node needs at least two children");
  }
  for (const auto& c : node.children) validate_node(c, n, seen);
}

template <typename Node>
bool eval_node(const Node& node, Mask x) noexcept {
  using T = NodeTraits<Node>;
  if (node.kind == T::kLeaf) return test_bit(x, node.var);
  if (node.kind == T::kConj) {
    return std::all_of(node.children.begin(), node.children.end(), [x](const Node& c) { return eval_node(c, x); });
  }
  return std::any_of(node.children.begin(), node.children.end(), [x](const Node& c) { return eval_node(c, x); });
}

// Three-valued evaluation; exact on read-once trees since children share no variables.
template <typename Node>
std::optional<bool> kleene(const Node& node, const PartialAssignment& pa) noexcept {
  using T = NodeTraits<Node>;
  if (node.kind == T::kLeaf) {
    if (!pa.is_tested(node.var)) return std::nullopt;
    return pa.value(node.var);
  }
  const bool absorbing = node.kind != T::kConj;  // false absorbs AND, true absorbs OR
  bool unknown = false;
  for (const auto& c : node.children) {
    const auto v = kleene(c, pa);
    if (!v) {
      unknown = true;
    } else if (*v == absorbing) {
      return absorbing;
    }
  }
  if (unknown) return std::nullopt;
  return !absorbing;
}

// Either a constant or a simplified node.
template <typename Node>
using Simplified = std::variant<bool, Node>;

template <typename Node>
Simplified<Node> fix_var(const Node& node, int var, bool value) {
  using T = NodeTraits<Node>;
  if (node.kind == T::kLeaf) {
    if (node.var == var) return value;
    return node;
  }
  const bool absorbing = node.kind != T::kConj;
  std::vector<Node> kept;
  kept.reserve(node.children.size());
  for (const auto& c : node.children) {
    auto r = fix_var(c, var, value);
    if (auto* b = std::get_if<bool>(&r)) {
      if (*b == absorbing) return absorbing;
      continue;  // identity element drops out
    }
    kept.push_back(std::move(std::get<Node>(r)));
  }
  if (kept.empty()) return !absorbing;
  if (kept.size() == 1) return std::move(kept.front());
  Node out;
  out.kind = node.kind;
  out.children = std::move(kept);
  return out;
}

RoNode to_ro_node(const TtspNode& node) {
  switch (node.kind) {
    case TtspNode::Kind::Edge: return RoNode::leaf(node.var);
    case TtspNode::Kind::Series:
    case TtspNode::Kind::Parallel: {
      std::vector<RoNode> children;
      children.reserve(node.children.size());
      for (const auto& c : node.children) children.push_back(to_ro_node(c));
      return node.kind == TtspNode::Kind::Series ? RoNode::all_of(std::move(children))
                                                 : RoNode::any_of(std::move(children));
    }
  }
  return RoNode::leaf(node.var);
}

}  // namespace

// ---------------------------------------------------------------------------
// DnfFormula

DnfFormula::DnfFormula(int num_vars, std::vector<Term> terms) : num_vars_(num_vars), terms_(std::move(terms)) {
  check_num_vars(num_vars);
  if (terms_.empty()) throw InvalidFormula("dnf needs at least one term");
  masks_.reserve(terms_.size());
  for (const auto& term : terms_) {
    if (term.empty()) throw InvalidFormula("dnf term with no literals");
    TermMasks m;
    for (const auto& lit : term) {
      check_var(lit.var, num_vars, "dnf");
      if (test_bit(m.positive | m.negative, lit.var)) {
        throw InvalidFormula("variable " + std::to_string(lit.var) + " repeated within a term");
      }
      (lit.negated ? m.negative : m.positive) |= bit(lit.var);
    }
    masks_.push_back(m);
  }
}

bool DnfFormula::is_negation_free() const noexcept {
  return std::all_of(masks_.begin(), masks_.end(), [](const TermMasks& m) { return m.negative == 0; });
}

bool DnfFormula::is_read_once() const noexcept {
  Mask seen = 0;
  for (const auto& m : masks_) {
    if (m.negative != 0 || (seen & m.positive) != 0) return false;
    seen |= m.positive;
  }
  return true;
}

DnfFormula DnfFormula::normalized() const {
  std::set<std::pair<Mask, Mask>> seen;
  std::vector<Term> kept;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    if (seen.insert({masks_[j].positive, masks_[j].negative}).second) kept.push_back(terms_[j]);
  }
  return DnfFormula(num_vars_, std::move(kept));
}

bool DnfFormula::eval(Mask x) const noexcept {
  return std::any_of(masks_.begin(), masks_.end(),
                     [x](const TermMasks& m) { return (x & m.positive) == m.positive && (x & m.negative) == 0; });
}

// ---------------------------------------------------------------------------
// ReadOnceDnf

ReadOnceDnf::ReadOnceDnf(DnfFormula formula) : dnf_(std::move(formula)) {
  if (!dnf_.is_negation_free()) throw NotReadOnceDnf("read-once dnf may not contain negated literals");
  if (!dnf_.is_read_once()) throw NotReadOnceDnf("read-once dnf terms must use disjoint variables");
}

ReadOnceDnf ReadOnceDnf::from_terms(int num_vars, const std::vector<std::vector<int>>& terms) {
  std::vector<DnfFormula::Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    DnfFormula::Term term;
    for (int v : t) term.push_back({v, false});
    out.push_back(std::move(term));
  }
  return ReadOnceDnf(DnfFormula(num_vars, std::move(out)));
}

std::vector<int> ReadOnceDnf::term_vars(std::size_t j) const {
  std::vector<int> vars;
  for (const auto& lit : dnf_.terms().at(j)) vars.push_back(lit.var);
  return vars;
}

// ---------------------------------------------------------------------------
// RoTree / TtspGraph

RoTree::RoTree(int num_vars, RoNode root) : num_vars_(num_vars), root_(std::move(root)) {
  check_num_vars(num_vars);
  Mask seen = 0;
  validate_node(root_, num_vars_, seen);
}

bool RoTree::eval(Mask x) const noexcept { return eval_node(root_, x); }

TtspGraph::TtspGraph(int num_vars, TtspNode root) : num_vars_(num_vars), root_(std::move(root)) {
  check_num_vars(num_vars);
  Mask seen = 0;
  validate_node(root_, num_vars_, seen);
}

bool TtspGraph::connected(Mask x) const noexcept { return eval_node(root_, x); }

RoTree ttsp_to_formula(const TtspGraph& graph) { return RoTree(graph.num_vars(), to_ro_node(graph.root())); }

// ---------------------------------------------------------------------------
// Formula dispatch

int num_vars(const Formula& formula) noexcept {
  return std::visit(
      [](const auto& f) -> int {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ConstantFormula>) {
          return f.num_vars;
        } else {
          return f.num_vars();
        }
      },
      formula);
}

const char* kind_name(const Formula& formula) noexcept {
  switch (formula.index()) {
    case 0: return "truth_table";
    case 1: return "dnf";
    case 2: return "rotree";
    case 3: return "ttsp";
    default: return "constant";
  }
}

bool eval(const Formula& formula, Mask x) {
  return std::visit(
      [x](const auto& f) -> bool {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, TruthTable>) {
          return f.get(x & full_mask(f.num_vars()));
        } else if constexpr (std::is_same_v<F, TtspGraph>) {
          return f.connected(x);
        } else if constexpr (std::is_same_v<F, ConstantFormula>) {
          return f.value;
        } else {
          return f.eval(x);
        }
      },
      formula);
}

std::optional<bool> dnf_structural_determination(const DnfFormula& dnf, const PartialAssignment& pa) {
  const Mask true_vars = pa.tested & pa.values;
  const Mask false_vars = pa.tested & ~pa.values;
  bool all_falsified = true;
  for (const auto& m : dnf.term_masks()) {
    if ((m.positive & ~true_vars) == 0 && (m.negative & ~false_vars) == 0) return true;
    if ((m.positive & false_vars) == 0 && (m.negative & true_vars) == 0) all_falsified = false;
  }
  if (all_falsified) return false;
  return std::nullopt;
}

std::optional<bool> completion_scan(const Formula& formula, const PartialAssignment& pa) {
  const int n = num_vars(formula);
  const Mask free = full_mask(n) & ~pa.tested;
  const int k = popcount(free);
  if (k > kDefaultTruthTableCap) {
    throw SizeExceeded("completion scan over " + std::to_string(k) + " free variables");
  }
  const Mask base = pa.values & pa.tested;
  // Enumerate submasks of `free`, starting from free itself down to 0.
  const bool first = eval(formula, base | free);
  for (Mask sub = (free - 1) & free;; sub = (sub - 1) & free) {
    if (eval(formula, base | sub) != first) return std::nullopt;
    if (sub == 0) break;
  }
  return first;
}

std::optional<bool> is_determined(const Formula& formula, const PartialAssignment& pa) {
  return std::visit(
      [&](const auto& f) -> std::optional<bool> {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ConstantFormula>) {
          return f.value;
        } else if constexpr (std::is_same_v<F, DnfFormula>) {
          auto structural = dnf_structural_determination(f, pa);
          if (structural || f.is_negation_free()) return structural;
          return completion_scan(formula, pa);
        } else if constexpr (std::is_same_v<F, RoTree> || std::is_same_v<F, TtspGraph>) {
          return kleene(f.root(), pa);
        } else {
          return completion_scan(formula, pa);
        }
      },
      formula);
}

Formula restrict(const Formula& formula, int var, bool value) {
  const int n = num_vars(formula);
  check_var(var, n, "restrict");
  return std::visit(
      [&](const auto& f) -> Formula {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, ConstantFormula>) {
          return f;
        } else if constexpr (std::is_same_v<F, TruthTable>) {
          return f.restrict_in_place(var, value);
        } else if constexpr (std::is_same_v<F, DnfFormula>) {
          std::vector<DnfFormula::Term> kept;
          for (const auto& term : f.terms()) {
            DnfFormula::Term t;
            bool falsified = false;
            for (const auto& lit : term) {
              if (lit.var != var) {
                t.push_back(lit);
              } else if (lit.negated == value) {
                falsified = true;
                break;
              }
            }
            if (falsified) continue;
            if (t.empty()) return ConstantFormula{n, true};
            kept.push_back(std::move(t));
          }
          if (kept.empty()) return ConstantFormula{n, false};
          return DnfFormula(n, std::move(kept));
        } else {
          using Node = std::decay_t<decltype(f.root())>;
          auto r = fix_var<Node>(f.root(), var, value);
          if (auto* b = std::get_if<bool>(&r)) return ConstantFormula{n, *b};
          return F(n, std::move(std::get<Node>(r)));
        }
      },
      formula);
}

TruthTable to_truth_table(const Formula& formula, int cap) {
  if (const auto* t = std::get_if<TruthTable>(&formula)) {
    if (t->num_vars() > cap) throw SizeExceeded("truth table above cap");
    return *t;
  }
  const int n = num_vars(formula);
  if (n > cap) {
    throw SizeExceeded("to_truth_table: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  return TruthTable::from_function(n, [&](Mask x) { return eval(formula, x); });
}

std::optional<ReadOnceDnf> as_read_once_dnf(const Formula& formula) {
  const auto* dnf = std::get_if<DnfFormula>(&formula);
  if (dnf == nullptr || !dnf->is_read_once()) return std::nullopt;
  return ReadOnceDnf(*dnf);
}

ReadOnceDnf require_read_once_dnf(const Formula& formula) {
  const auto* dnf = std::get_if<DnfFormula>(&formula);
  if (dnf == nullptr) throw NotReadOnceDnf(std::string("expected a read-once dnf, got ") + kind_name(formula));
  return ReadOnceDnf(*dnf);
}

}  // namespace sbfe
