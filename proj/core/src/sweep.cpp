#include "sbfe/sweep.hpp"

#include "sbfe/error.hpp"
#include "sbfe/rng.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

namespace sbfe {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<std::string> axis_values(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) return split(spec, ',');
  long lo = 0;
  long hi = 0;
  try {
    lo = std::stol(spec.substr(0, dots));
    hi = std::stol(spec.substr(dots + 2));
  } catch (const std::exception&) {
    throw ParameterError("bad range '" + spec + "'");
  }
  std::vector<std::string> out;
  for (long v = lo; v <= hi; ++v) out.push_back(std::to_string(v));
  return out;
}

std::string row(const std::string& family, const std::vector<std::string>& params, const GenSpec& spec,
                const GapOptions& gap) {
  const auto generated = generate(spec);
  const auto& inst = generated.instance;
  const auto report = gap_report(inst, gap);
  std::ostringstream out;
  out << family;
  for (const auto& p : params) {
    const auto it = spec.params.find(p);
    out << ',' << (it == spec.params.end() ? "" : it->second);
  }
  out << ',' << inst.num_vars();
  auto exact_cell = [&out](const std::optional<Rational>& v) { out << ',' << (v ? format_rational(*v) : ""); };
  exact_cell(report.opt_a);
  exact_cell(report.opt_n);
  exact_cell(report.ratio);
  for (const char* name : {"alg1", "roundrobin", "termorder", "cost_sorted"}) {
    const auto* h = report.heuristic(name);
    out << ',' << (h ? h->cost.to_string() : "");
  }
  out << '\n';
  return out.str();
}

}  // namespace

std::vector<std::string> family_parameters(const std::string& family) {
  if (family == "tribes") return {"k", "w"};
  if (family == "ucap") return {"m", "l"};
  if (family == "geomcost") return {"l"};
  if (family == "bintree") return {"d", "eps"};
  if (family == "address") return {"d", "shared_cost"};
  throw ParameterError("unknown family '" + family + "'");
}

std::vector<GenSpec> expand_grid(const std::string& family,
                                 const std::vector<std::pair<std::string, std::string>>& axes) {
  const auto known = family_parameters(family);
  std::vector<GenSpec> out{GenSpec{family, {}}};
  for (const auto& [name, values] : axes) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ParameterError(family + " has no parameter '" + name + "'");
    }
    std::vector<GenSpec> next;
    if (!values.empty() && values.front() == '@') {
      const std::string source = values.substr(1);
      for (auto spec : out) {
        const auto it = spec.params.find(source);
        if (it == spec.params.end()) throw ParameterError("axis '" + name + "' copies unknown axis '" + source + "'");
        spec.params[name] = it->second;
        next.push_back(std::move(spec));
      }
    } else {
      for (const auto& spec : out) {
        for (const auto& v : axis_values(values)) {
          auto copy = spec;
          copy.params[name] = v;
          next.push_back(std::move(copy));
        }
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string sweep_csv(const std::string& family, const std::vector<GenSpec>& specs, const SweepOptions& options) {
  const auto params = family_parameters(family);
  std::ostringstream header;
  header << "family";
  for (const auto& p : params) header << ',' << p;
  header << ",n,opt_a,opt_n,ratio,alg1_cost,roundrobin_cost,termorder_cost,cost_sorted_cost\n";

  std::vector<std::string> rows(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        auto gap = options.gap;
        gap.seed = derive_seed(options.gap.seed, i);
        rows[i] = row(family, params, specs[i], gap);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(specs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::string out = header.str();
  for (const auto& r : rows) out += r;
  return out;
}

}  // namespace sbfe
