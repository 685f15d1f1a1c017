#pragma once

#include "sbfe/bits.hpp"
#include "sbfe/truth_table.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace sbfe {

struct Literal {
  int var = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Which variables have been tested and what they came back as.
/// `values` is only meaningful on `tested` and is kept a subset of it.
struct PartialAssignment {
  Mask tested = 0;
  Mask values = 0;

  bool is_tested(int var) const noexcept { return test_bit(tested, var); }
  bool value(int var) const noexcept { return test_bit(values, var); }

  PartialAssignment with(int var, bool value) const noexcept {
    return {tested | bit(var), value ? (values | bit(var)) : (values & ~bit(var))};
  }

  /// The assignment observed after testing `tested_set` on the full input x.
  static PartialAssignment observe(Mask x, Mask tested_set) noexcept { return {tested_set, x & tested_set}; }

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;
};

/// OR of terms, each an AND of literals. Terms may repeat; variables within a
/// term are distinct.
class DnfFormula {
 public:
  using Term = std::vector<Literal>;

  struct TermMasks {
    Mask positive = 0;
    Mask negative = 0;
  };

  DnfFormula(int num_vars, std::vector<Term> terms);

  int num_vars() const noexcept { return num_vars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  const std::vector<TermMasks>& term_masks() const noexcept { return masks_; }

  bool is_negation_free() const noexcept;
  /// Negation-free and every variable in at most one term.
  bool is_read_once() const noexcept;

  /// Copy with exact duplicate terms (same literal set) removed, first occurrence kept.
  DnfFormula normalized() const;

  bool eval(Mask x) const noexcept;

 private:
  int num_vars_;
  std::vector<Term> terms_;
  std::vector<TermMasks> masks_;
};

/// DNF whose terms use disjoint variable sets and no negations.
class ReadOnceDnf {
 public:
  /// Throws NotReadOnceDnf.
  explicit ReadOnceDnf(DnfFormula formula);
  static ReadOnceDnf from_terms(int num_vars, const std::vector<std::vector<int>>& terms);

  const DnfFormula& dnf() const noexcept { return dnf_; }
  int num_vars() const noexcept { return dnf_.num_vars(); }
  std::size_t num_terms() const noexcept { return dnf_.num_terms(); }
  /// Variables of term j in their listed order.
  std::vector<int> term_vars(std::size_t j) const;

 private:
  DnfFormula dnf_;
};

struct RoNode {
  enum class Kind { Leaf, And, Or };

  Kind kind = Kind::Leaf;
  int var = -1;
  std::vector<RoNode> children;

  static RoNode leaf(int var) { return {Kind::Leaf, var, {}}; }
  static RoNode all_of(std::vector<RoNode> children) { return {Kind::And, -1, std::move(children)}; }
  static RoNode any_of(std::vector<RoNode> children) { return {Kind::Or, -1, std::move(children)}; }

  friend bool operator==(const RoNode&, const RoNode&) = default;
};

/// Read-once AND/OR tree over positive leaves.
class RoTree {
 public:
  RoTree(int num_vars, RoNode root);

  int num_vars() const noexcept { return num_vars_; }
  const RoNode& root() const noexcept { return root_; }
  bool eval(Mask x) const noexcept;

  friend bool operator==(const RoTree&, const RoTree&) = default;

 private:
  int num_vars_;
  RoNode root_;
};

struct TtspNode {
  enum class Kind { Edge, Series, Parallel };

  Kind kind = Kind::Edge;
  int var = -1;
  std::vector<TtspNode> children;

  static TtspNode edge(int var) { return {Kind::Edge, var, {}}; }
  static TtspNode series(std::vector<TtspNode> children) { return {Kind::Series, -1, std::move(children)}; }
  static TtspNode parallel(std::vector<TtspNode> children) { return {Kind::Parallel, -1, std::move(children)}; }

  friend bool operator==(const TtspNode&, const TtspNode&) = default;
};

/// Two-terminal series-parallel multigraph; edge variables are s-t usable edges.
class TtspGraph {
 public:
  TtspGraph(int num_vars, TtspNode root);

  int num_vars() const noexcept { return num_vars_; }
  const TtspNode& root() const noexcept { return root_; }
  /// True iff an s-t path exists whose edges are all true in x.
  bool connected(Mask x) const noexcept;

 private:
  int num_vars_;
  TtspNode root_;
};

/// A function with empty support over n variables.
struct ConstantFormula {
  int num_vars = 0;
  bool value = false;

  friend bool operator==(const ConstantFormula&, const ConstantFormula&) = default;
};

using Formula = std::variant<TruthTable, DnfFormula, RoTree, TtspGraph, ConstantFormula>;

int num_vars(const Formula& formula) noexcept;
const char* kind_name(const Formula& formula) noexcept;

bool eval(const Formula& formula, Mask x);

/// Determined(value) when f is constant on the subcube fixed by `pa`, nullopt otherwise.
std::optional<bool> is_determined(const Formula& formula, const PartialAssignment& pa);

/// The term-based rule: some term satisfied by tested literals -> true; every
/// term contradicted by a tested literal -> false. Exact for negation-free
/// DNFs, sound (never wrong when it answers) for any DNF.
std::optional<bool> dnf_structural_determination(const DnfFormula& dnf, const PartialAssignment& pa);

/// Exhaustive scan over all completions of the untested variables.
std::optional<bool> completion_scan(const Formula& formula, const PartialAssignment& pa);

/// f with x_var := value. Collapses to ConstantFormula when the result has no
/// remaining structure.
Formula restrict(const Formula& formula, int var, bool value);

/// Series -> And, Parallel -> Or, Edge -> Leaf.
RoTree ttsp_to_formula(const TtspGraph& graph);

/// Throws SizeExceeded when num_vars exceeds `cap`.
TruthTable to_truth_table(const Formula& formula, int cap = kDefaultTruthTableCap);

std::optional<ReadOnceDnf> as_read_once_dnf(const Formula& formula);
/// Throws NotReadOnceDnf.
ReadOnceDnf require_read_once_dnf(const Formula& formula);

}  // namespace sbfe
