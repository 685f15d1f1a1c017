#include "sbfe/determination.hpp"

#include "sbfe/error.hpp"

#include <string>

namespace sbfe {

SubcubeTable::SubcubeTable(const TruthTable& table) : num_vars_(table.num_vars()) {
  if (num_vars_ > kMaxVars) {
    throw SizeExceeded("subcube table needs n <= " + std::to_string(kMaxVars) + ", got " + std::to_string(num_vars_));
  }
  const int n = num_vars_;
  const std::size_t binary_size = std::size_t{1} << n;
  ternary_.assign(binary_size, 0);
  std::size_t pow3 = 1;
  std::vector<std::size_t> pow3s(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    pow3s[static_cast<std::size_t>(i)] = pow3;
    pow3 *= 3;
  }
  for (std::size_t m = 1; m < binary_size; ++m) {
    const int low = std::countr_zero(m);
    ternary_[m] = ternary_[m & (m - 1)] + static_cast<std::uint32_t>(pow3s[static_cast<std::size_t>(low)]);
  }

  // Convert one variable at a time from radix 2 to radix 3. After processing
  // variables [0, i) the layout is ternary(low i digits) + 3^i * binary(rest).
  std::vector<std::uint8_t> cur(binary_size);
  for (std::size_t x = 0; x < binary_size; ++x) cur[x] = table.get(x) ? kCanBeTrue : kCanBeFalse;
  std::vector<std::uint8_t> next;
  for (int i = 0; i < n; ++i) {
    const std::size_t low = pow3s[static_cast<std::size_t>(i)];
    const std::size_t high = std::size_t{1} << (n - i - 1);
    next.assign(low * 3 * high, 0);
    for (std::size_t h = 0; h < high; ++h) {
      const std::uint8_t* zero = &cur[low * (2 * h)];
      const std::uint8_t* one = &cur[low * (2 * h + 1)];
      std::uint8_t* out = &next[3 * low * h];
      for (std::size_t l = 0; l < low; ++l) {
        out[l] = zero[l];
        out[low + l] = one[l];
        out[2 * low + l] = static_cast<std::uint8_t>(zero[l] | one[l]);
      }
    }
    cur.swap(next);
  }
  status_ = std::move(cur);
}

Determiner::Determiner(const Formula& formula, int table_cap)
    : formula_(std::make_shared<const Formula>(formula)), num_vars_(sbfe::num_vars(formula)) {
  if (const auto* c = std::get_if<ConstantFormula>(&formula)) {
    route_ = Route::Constant;
    constant_ = c->value;
    return;
  }
  if (const auto* dnf = std::get_if<DnfFormula>(&formula); dnf != nullptr && dnf->is_negation_free()) {
    route_ = Route::MonotoneDnf;
    terms_ = dnf->term_masks();
    return;
  }
  if (std::holds_alternative<RoTree>(formula) || std::holds_alternative<TtspGraph>(formula)) {
    route_ = Route::Tree;
    return;
  }
  if (num_vars_ <= table_cap && num_vars_ <= SubcubeTable::kMaxVars) {
    route_ = Route::Table;
    table_ = std::make_shared<const SubcubeTable>(to_truth_table(formula));
    return;
  }
  route_ = Route::Scan;
}

std::optional<bool> Determiner::check(Mask tested, Mask values) const {
  values &= tested;
  switch (route_) {
    case Route::Constant: return constant_;
    case Route::MonotoneDnf: {
      const Mask true_vars = values;
      const Mask false_vars = tested & ~values;
      bool all_falsified = true;
      for (const auto& m : terms_) {
        if ((m.positive & ~true_vars) == 0) return true;
        if ((m.positive & false_vars) == 0) all_falsified = false;
      }
      if (all_falsified) return false;
      return std::nullopt;
    }
    case Route::Table: return table_->determination(tested, values);
    case Route::Tree:
    case Route::Scan: return is_determined(*formula_, {tested, values});
  }
  return std::nullopt;
}

}  // namespace sbfe
