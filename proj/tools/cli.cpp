#include "cli.hpp"

#include "sbfe/error.hpp"
#include "sbfe/gap.hpp"
#include "sbfe/heuristics.hpp"
#include "sbfe/json_io.hpp"
#include "sbfe/lemmas.hpp"
#include "sbfe/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sbfe::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParameterError("cannot write '" + path + "'");
  file << text;
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ParameterError("expected name=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

Mask free_mask_from(const std::string& leaf_meta, const std::string& free_mask) {
  if (!leaf_meta.empty()) return tree_meta_from_json(read_file(leaf_meta)).internal_mask;
  if (free_mask.empty()) return 0;
  try {
    return std::stoull(free_mask, nullptr, 0);
  } catch (const std::exception&) {
    throw ParameterError("bad --free-mask '" + free_mask + "'");
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  int status = kExitPass;
};

void add_gen(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("gen", "Generate a lower-bound instance family");
  auto family = std::make_shared<std::string>();
  auto params = std::make_shared<std::vector<std::string>>();
  auto out_path = std::make_shared<std::string>();
  auto meta_path = std::make_shared<std::string>();
  cmd->add_option("family", *family, "tribes | ucap | geomcost | bintree | address")
      ->required()
      ->check(CLI::IsMember({"tribes", "ucap", "geomcost", "bintree", "address"}));
  cmd->add_option("--params", *params, "name=value pairs, e.g. k=4 w=4")->expected(0, -1);
  cmd->add_option("--out", *out_path, "instance JSON (stdout if omitted)");
  cmd->add_option("--meta", *meta_path, "tree meta side-file (bintree; default <out>.meta.json)");
  cmd->callback([&ctx, family, params, out_path, meta_path] {
    GenSpec spec{*family, {}};
    for (const auto& p : *params) spec.params.insert(split_assignment(p));
    const auto generated = generate(spec);
    write_output(*out_path, instance_to_json(generated.instance), ctx.out);
    if (generated.meta) {
      std::string meta = *meta_path;
      if (meta.empty() && !out_path->empty() && *out_path != "-") meta = *out_path + ".meta.json";
      if (!meta.empty()) write_output(meta, tree_meta_to_json(*generated.meta), ctx.out);
    }
  });
}

void add_strategy(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("strategy", "Build a named heuristic strategy");
  auto name = std::make_shared<std::string>();
  auto in_path = std::make_shared<std::string>();
  auto out_path = std::make_shared<std::string>();
  cmd->add_option("--name", *name, "bu | alg1 | roundrobin | termorder | cost")
      ->required()
      ->check(CLI::IsMember({"bu", "alg1", "roundrobin", "termorder", "cost", "cost_sorted"}));
  cmd->add_option("--in", *in_path, "instance JSON")->required();
  cmd->add_option("--out", *out_path, "strategy JSON (stdout if omitted)");
  cmd->callback([&ctx, name, in_path, out_path] {
    const auto inst = instance_from_json(read_file(*in_path));
    const auto s = make_heuristic(inst, *name);
    std::string text;
    if (const auto* p = std::get_if<NonAdaptiveStrategy>(&s)) {
      text = strategy_to_json(*p);
    } else {
      text = strategy_to_json(materialize(inst, std::get<AdaptivePolicy>(s)));
    }
    write_output(*out_path, text, ctx.out);
  });
}

void add_eval(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("eval", "Expected cost of a strategy (or its cost on one input)");
  struct Opts {
    std::string in, strategy, out, mode = "exact", free_mask, leaf_meta;
    std::uint64_t samples = 100000, seed = 1;
    unsigned workers = 1;
    std::string input;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--in", o->in, "instance JSON")->required();
  cmd->add_option("--strategy", o->strategy, "strategy JSON")->required();
  cmd->add_option("--out", o->out, "cost JSON (stdout if omitted)");
  cmd->add_option("--mode", o->mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  cmd->add_option("--samples", o->samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o->seed, "Monte Carlo seed");
  cmd->add_option("--workers", o->workers, "Monte Carlo workers")->check(CLI::PositiveNumber);
  cmd->add_option("--free-mask", o->free_mask, "variables charged nothing (integer bitmask)");
  cmd->add_option("--leaf-cost", o->leaf_meta, "tree meta file; its internal edges become free");
  cmd->add_option("--x", o->input, "evaluate on this single input bitmask instead");
  cmd->callback([&ctx, o] {
    const auto inst = instance_from_json(read_file(o->in));
    const auto s = strategy_from_json(read_file(o->strategy));
    if (const auto* p = std::get_if<NonAdaptiveStrategy>(&s)) validate_permutation(*p, inst.num_vars());
    if (const auto* t = std::get_if<AdaptiveTree>(&s)) t->validate(inst.num_vars());
    const Mask free = free_mask_from(o->leaf_meta, o->free_mask);
    std::string text;
    if (!o->input.empty()) {
      Mask x = 0;
      try {
        x = std::stoull(o->input, nullptr, 0);
      } catch (const std::exception&) {
        throw ParameterError("bad --x '" + o->input + "'");
      }
      text = cost_to_json(Simulator(inst).cost(x, s, free));
    } else if (o->mode == "mc") {
      text = estimate_to_json(expected_cost_mc(inst, s, o->samples, o->seed, o->workers, free));
    } else {
      text = cost_to_json(expected_cost_exact(inst, s, free));
    }
    write_output(o->out, text, ctx.out);
  });
}

void add_opt(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("opt", "Optimal adaptive / non-adaptive strategies");
  struct Opts {
    std::string in, out, mode = "both";
    bool brute = false;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--in", o->in, "instance JSON")->required();
  cmd->add_option("--out", o->out, "result JSON (stdout if omitted)");
  cmd->add_option("--mode", o->mode, "adaptive | nonadaptive | both")
      ->check(CLI::IsMember({"adaptive", "nonadaptive", "both"}));
  cmd->add_flag("--brute", o->brute, "use the exhaustive oracle instead of the dynamic programs");
  cmd->callback([&ctx, o] {
    const auto inst = instance_from_json(read_file(o->in));
    auto solve = [&](StrategyClass kind) {
      if (o->brute) return brute_force_opt(inst, kind);
      return kind == StrategyClass::Adaptive ? opt_adaptive(inst) : opt_nonadaptive(inst);
    };
    std::string text;
    if (o->mode == "adaptive") {
      text = solve_result_to_json(solve(StrategyClass::Adaptive));
    } else if (o->mode == "nonadaptive") {
      text = solve_result_to_json(solve(StrategyClass::NonAdaptive));
    } else {
      nlohmann::ordered_json both;
      both["adaptive"] = nlohmann::ordered_json::parse(solve_result_to_json(solve(StrategyClass::Adaptive), -1));
      both["nonadaptive"] = nlohmann::ordered_json::parse(solve_result_to_json(solve(StrategyClass::NonAdaptive), -1));
      text = both.dump(2) + "\n";
    }
    write_output(o->out, text, ctx.out);
  });
}

void add_gap(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("gap", "Adaptivity gap and heuristic costs for one instance");
  struct Opts {
    std::string in, out, mode = "exact";
    GapOptions gap;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--in", o->in, "instance JSON")->required();
  cmd->add_option("--out", o->out, "report JSON (stdout if omitted)");
  cmd->add_option("--mode", o->mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  cmd->add_option("--samples", o->gap.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o->gap.seed, "Monte Carlo seed");
  cmd->add_option("--workers", o->gap.workers, "Monte Carlo workers")->check(CLI::PositiveNumber);
  cmd->callback([&ctx, o] {
    const auto inst = instance_from_json(read_file(o->in));
    auto options = o->gap;
    options.monte_carlo = o->mode == "mc";
    const auto report = gap_report(inst, options);
    write_output(o->out, gap_report_to_json(report), ctx.out);
    for (const auto& v : gap_report_violations(report)) {
      ctx.err << "invariant violated: " << v << '\n';
      ctx.status = kExitFail;
    }
  });
}

void add_sweep(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("sweep", "CSV of gap reports over a parameter grid");
  struct Opts {
    std::string family, out, mode = "exact";
    std::vector<std::string> params;
    SweepOptions sweep;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--family", o->family, "instance family")
      ->required()
      ->check(CLI::IsMember({"tribes", "ucap", "geomcost", "bintree", "address"}));
  cmd->add_option("--param", o->params, "axis name=values: 2,3,4 | 2..4 | @other (repeatable)");
  cmd->add_option("--out", o->out, "CSV file (stdout if omitted)");
  cmd->add_option("--mode", o->mode, "exact | mc")->check(CLI::IsMember({"exact", "mc"}));
  cmd->add_option("--samples", o->sweep.gap.samples, "Monte Carlo samples per heuristic")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o->sweep.gap.seed, "Monte Carlo seed");
  cmd->add_option("--threads", o->sweep.threads, "rows computed concurrently")->check(CLI::PositiveNumber);
  cmd->callback([&ctx, o] {
    std::vector<std::pair<std::string, std::string>> axes;
    for (const auto& p : o->params) axes.push_back(split_assignment(p));
    auto options = o->sweep;
    options.gap.monte_carlo = o->mode == "mc";
    write_output(o->out, sweep_csv(o->family, expand_grid(o->family, axes), options), ctx.out);
  });
}

void add_verify(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("verify", "Run a lemma checker");
  cmd->require_subcommand(1);
  auto out_path = std::make_shared<std::string>();
  cmd->add_option("--out", *out_path, "result JSON (stdout if omitted)");

  auto report = [&ctx, out_path](const LemmaResult& r) {
    write_output(*out_path, lemma_result_to_json(r), ctx.out);
    if (!r.pass) ctx.status = kExitFail;
  };

  cmd->fallthrough();
  auto* em = cmd->add_subcommand("earthmover", "Exact earthmover inequality, single input or seeded batch");
  struct EmOpts {
    std::string p_list, p;
    std::uint64_t trials = 100000, seed = 1;
  };
  auto e = std::make_shared<EmOpts>();
  em->add_option("--p-list", e->p_list, "comma list p_1,...,p_L (single-input mode)");
  em->add_option("--p", e->p, "the bound p >= p_1 (single-input mode)");
  em->add_option("--trials", e->trials, "batch size");
  em->add_option("--seed", e->seed, "batch seed");
  em->callback([e, report] {
    if (!e->p.empty() || !e->p_list.empty()) {
      if (e->p.empty()) throw ParameterError("--p-list needs --p");
      report(check_earthmover(parse_rational_list(e->p_list), parse_rational(e->p)));
    } else {
      report(check_earthmover_batch(e->trials, e->seed));
    }
  });

  auto* br = cmd->add_subcommand("branching", "Branching process mean and survival");
  struct BrOpts {
    int d = 6;
    std::string eps = "1/4";
    std::uint64_t samples = 100000, seed = 1;
  };
  auto b = std::make_shared<BrOpts>();
  br->add_option("--d", b->d, "depth")->check(CLI::NonNegativeNumber);
  br->add_option("--eps", b->eps, "epsilon as num/den");
  br->add_option("--samples", b->samples, "samples")->check(CLI::PositiveNumber);
  br->add_option("--seed", b->seed, "seed");
  br->callback([b, report] { report(check_branching(b->d, parse_rational(b->eps), b->samples, b->seed)); });

  auto* lm = cmd->add_subcommand("leafmono", "First-alive-leaf probabilities of optimal leaf orders");
  struct LmOpts {
    int d = 2;
    std::string eps = "1/4";
  };
  auto l = std::make_shared<LmOpts>();
  lm->add_option("--d", l->d, "depth (<= 3)")->check(CLI::PositiveNumber);
  lm->add_option("--eps", l->eps, "epsilon as num/den");
  lm->callback([l, report] { report(check_leaf_monotone(l->d, parse_rational(l->eps))); });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic Boolean function evaluation laboratory", "sbfe"};
  app.require_subcommand(1);
  Context ctx{out, err};
  add_gen(app, ctx);
  add_strategy(app, ctx);
  add_eval(app, ctx);
  add_opt(app, ctx);
  add_gap(app, ctx);
  add_sweep(app, ctx);
  add_verify(app, ctx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const Error& e) {
    err << "sbfe: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return ctx.status;
}

}  // namespace sbfe::cli
