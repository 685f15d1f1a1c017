#include "sbfe/gap.hpp"

#include "sbfe/error.hpp"
#include "sbfe/heuristics.hpp"
#include "sbfe/json_io.hpp"
#include "sbfe/rng.hpp"

#include <json.hpp>

#include <cstdio>

namespace sbfe {

Strategy make_heuristic(const Instance& instance, const std::string& name) {
  if (name == "bu") return boros_unluyurt(instance);
  if (name == "alg1") return algorithm1(instance);
  if (name == "roundrobin") return round_robin(instance);
  if (name == "termorder") return term_order(instance);
  if (name == "cost_sorted" || name == "cost") return increasing_cost(instance);
  throw ParameterError("unknown heuristic '" + name + "'");
}

const HeuristicCost* GapReport::heuristic(const std::string& name) const {
  for (const auto& h : heuristics) {
    if (h.name == name) return &h;
  }
  return nullptr;
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : instance_to_json(instance, -1)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GapReport gap_report(const Instance& instance, const GapOptions& options) {
  GapReport out;
  out.digest = instance_digest(instance);
  out.mode = options.monte_carlo ? "mc" : "exact";
  if (!options.monte_carlo) {
    if (!instance.is_exact()) throw ModeMismatch("exact gap report needs an exact instance; use Monte Carlo mode");
    out.opt_a = opt_adaptive(instance, options.limits).value;
    out.opt_n = opt_nonadaptive(instance, options.limits).value;
    out.ratio = *out.opt_a == 0 ? Rational(1) : Rational(*out.opt_n / *out.opt_a);
  }
  std::uint64_t stream = 0;
  for (const char* name : kHeuristicNames) {
    const std::uint64_t this_stream = stream++;
    Strategy s;
    try {
      s = make_heuristic(instance, name);
    } catch (const NotReadOnceDnf&) {
      continue;
    } catch (const PreconditionViolated&) {
      continue;
    }
    HeuristicCost h;
    h.name = name;
    h.adaptive = is_adaptive(s);
    if (options.monte_carlo) {
      const auto est = expected_cost_mc(instance, s, options.samples, derive_seed(options.seed, this_stream),
                                        options.workers);
      h.cost = est.mean;
      h.stderr_of_mean = est.stderr_of_mean;
    } else {
      h.cost = expected_cost_exact(instance, s);
    }
    out.heuristics.push_back(std::move(h));
  }
  return out;
}

std::vector<std::string> gap_report_violations(const GapReport& report) {
  std::vector<std::string> out;
  if (!report.opt_a || !report.opt_n) return out;
  if (*report.opt_a > *report.opt_n) out.push_back("opt_a exceeds opt_n");
  for (const auto& h : report.heuristics) {
    if (!h.cost.is_exact()) continue;
    if (h.cost.exact() < *report.opt_a) out.push_back(h.name + " beats opt_a");
    if (!h.adaptive && h.cost.exact() < *report.opt_n) out.push_back(h.name + " beats opt_n");
  }
  return out;
}

std::string gap_report_to_json(const GapReport& report, int indent) {
  using Json = nlohmann::ordered_json;
  Json j;
  j["digest"] = report.digest;
  j["mode"] = report.mode;
  auto opt = [](const std::optional<Rational>& v) { return v ? Json(format_rational(*v)) : Json(nullptr); };
  j["opt_a"] = opt(report.opt_a);
  j["opt_n"] = opt(report.opt_n);
  j["ratio"] = opt(report.ratio);
  Json hs = Json::object();
  for (const auto& h : report.heuristics) {
    Json e;
    e["adaptive"] = h.adaptive;
    if (h.cost.is_exact()) {
      e["value"] = format_rational(h.cost.exact());
    } else {
      e["value"] = h.cost.to_double();
    }
    if (h.stderr_of_mean) e["stderr"] = *h.stderr_of_mean;
    hs[h.name] = std::move(e);
  }
  j["heuristics"] = std::move(hs);
  return j.dump(indent) + (indent >= 0 ? "\n" : "");
}

}  // namespace sbfe
