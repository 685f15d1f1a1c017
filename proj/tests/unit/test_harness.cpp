#include "sbfe/error.hpp"
#include "sbfe/formula.hpp"
#include "sbfe/gap.hpp"
#include "sbfe/generators.hpp"
#include "sbfe/lemmas.hpp"
#include "sbfe/sweep.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <sstream>

namespace {

using namespace sbfe;

std::vector<Rational> fractions(std::initializer_list<std::pair<long, long>> values) {
  std::vector<Rational> out;
  for (const auto& [n, d] : values) out.push_back(make_rational(n, d));
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

TEST(Earthmover, WorkedExample) {
  const auto c = earthmover_case(fractions({{1, 2}, {3, 10}, {1, 5}}), make_rational(1, 2));
  EXPECT_EQ(c.l_prime, 2);
  EXPECT_EQ(c.lhs, make_rational(17, 10));
  EXPECT_EQ(c.rhs, make_rational(3, 2));
  EXPECT_TRUE(c.holds);
  const auto r = check_earthmover(fractions({{1, 2}, {3, 10}, {1, 5}}), make_rational(1, 2));
  EXPECT_TRUE(r.pass);
  ASSERT_NE(r.stat("lhs"), nullptr);
  EXPECT_EQ(r.stat("lhs")->exact, "17/10");
}

TEST(Earthmover, EdgeCases) {
  const auto zeros = earthmover_case({Rational(0), Rational(0)}, make_rational(1, 3));
  EXPECT_EQ(zeros.l_prime, 0);
  EXPECT_EQ(zeros.lhs, 0);
  EXPECT_EQ(zeros.rhs, 0);
  EXPECT_TRUE(zeros.holds);
  // All mass at p: both sides agree.
  const auto flat = earthmover_case(fractions({{1, 4}, {1, 4}, {1, 4}}), make_rational(1, 4));
  EXPECT_EQ(flat.l_prime, 3);
  EXPECT_EQ(flat.lhs, flat.rhs);
  EXPECT_TRUE(flat.holds);
}

TEST(Earthmover, Hypotheses) {
  EXPECT_THROW(earthmover_case(fractions({{1, 4}}), Rational(0)), HypothesisViolated);
  EXPECT_THROW(earthmover_case(fractions({{1, 4}, {1, 2}}), make_rational(1, 2)), HypothesisViolated);
  EXPECT_THROW(earthmover_case(fractions({{1, 2}}), make_rational(1, 4)), HypothesisViolated);
  EXPECT_THROW(earthmover_case({make_rational(1, 4), make_rational(-1, 4)}, make_rational(1, 2)), HypothesisViolated);
}

TEST(Earthmover, RandomBatch) {
  const auto r = check_earthmover_batch(2000, 5);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.trials, 2000U);
  EXPECT_EQ(r.violations, 0U);
  ASSERT_NE(r.stat("min_slack"), nullptr);
  EXPECT_GE(r.stat("min_slack")->value, 0.0);
  EXPECT_GT(r.stat("equality_cases")->value, 0.0);
  EXPECT_EQ(lemma_result_to_json(r), lemma_result_to_json(check_earthmover_batch(2000, 5)));
}

TEST(Branching, ExactLaw) {
  EXPECT_EQ(branching_distribution(0, make_rational(1, 4)), (std::vector<Rational>{Rational(0), Rational(1)}));
  const auto z2 = branching_distribution(2, make_rational(1, 4));
  EXPECT_EQ(z2, fractions({{56169, 262144}, {17775, 65536}, {40875, 131072}, {9375, 65536}, {15625, 262144}}));
  for (int d = 0; d <= 6; ++d) {
    const auto law = branching_distribution(d, make_rational(1, 4));
    Rational mass(0);
    Rational mean(0);
    for (std::size_t k = 0; k < law.size(); ++k) {
      mass += law[k];
      mean += law[k] * static_cast<long>(k);
    }
    EXPECT_EQ(mass, 1);
    EXPECT_EQ(mean, pow(make_rational(5, 4), static_cast<unsigned>(d)));
  }
}

TEST(Branching, LawsAgree) {
  for (int d = 1; d <= 3; ++d) {
    for (const auto& eps : fractions({{1, 4}, {1, 2}, {1, 7}})) {
      EXPECT_EQ(branching_distribution(d, eps), branching_distribution_by_edges(d, eps)) << d;
    }
  }
  EXPECT_THROW(branching_distribution_by_edges(4, make_rational(1, 4)), SizeExceeded);
}

TEST(Branching, Simulation) {
  const auto r = check_branching(5, make_rational(1, 4), 20000, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.stat("target_mean")->exact, "3125/1024");
  EXPECT_NEAR(r.stat("mean")->value, 3125.0 / 1024, 4 * r.stat("stderr_mean")->value);
  EXPECT_GE(r.stat("survival")->value, 0.25);
  const auto trivial = check_branching(0, make_rational(1, 4), 10, 1);
  EXPECT_TRUE(trivial.pass);
  EXPECT_EQ(trivial.stat("mean")->value, 1.0);
  EXPECT_EQ(trivial.stat("survival")->value, 1.0);
  EXPECT_THROW(check_branching(2, make_rational(1, 4), 0, 1), ParameterError);
}

TEST(LeafMonotone, DepthTwo) {
  const auto r = check_leaf_monotone(2, make_rational(1, 4));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.stat("orders")->value, 24.0);
  EXPECT_EQ(r.stat("minimizers")->value, 16.0);
  EXPECT_EQ(r.stat("opt_conditional_leaf_cost")->exact, "1340/749");
  EXPECT_EQ(r.stat("pr_alive")->exact, "205975/262144");
  EXPECT_EQ(r.stat("p_1")->exact, "4096/8239");
  EXPECT_EQ(r.stat("p_2")->exact, "2496/8239");
  EXPECT_EQ(r.stat("p_3")->exact, "936/8239");
  EXPECT_EQ(r.stat("p_4")->exact, "711/8239");
  EXPECT_EQ(first_alive_leaf_probs(2, make_rational(1, 4), {0, 2, 1, 3}),
            fractions({{4096, 8239}, {2496, 8239}, {936, 8239}, {711, 8239}}));
}

TEST(LeafMonotone, OtherParameters) {
  const auto d1 = check_leaf_monotone(1, make_rational(1, 4));
  EXPECT_TRUE(d1.pass);
  EXPECT_EQ(d1.stat("orders")->value, 2.0);
  EXPECT_TRUE(check_leaf_monotone(2, make_rational(1, 2)).pass);
  const auto probs = first_alive_leaf_probs(2, make_rational(1, 2), {3, 2, 1, 0});
  Rational total(0);
  for (const auto& p : probs) total += p;
  EXPECT_EQ(total, 1);
  EXPECT_THROW(check_leaf_monotone(4, make_rational(1, 4)), SizeExceeded);
  EXPECT_THROW(first_alive_leaf_probs(2, make_rational(1, 4), {0, 1, 1, 3}), ParameterError);
}

TEST(Gap, Tribes) {
  const auto report = gap_report(gen_tribes(2, 2));
  EXPECT_EQ(report.mode, "exact");
  EXPECT_EQ(*report.opt_a, make_rational(21, 8));
  EXPECT_EQ(*report.opt_n, make_rational(25, 8));
  EXPECT_EQ(*report.ratio, make_rational(25, 21));
  EXPECT_TRUE(gap_report_violations(report).empty());
  ASSERT_NE(report.heuristic("bu"), nullptr);
  EXPECT_TRUE(report.heuristic("bu")->adaptive);
  EXPECT_EQ(report.heuristic("bu")->cost.exact(), make_rational(21, 8));
  EXPECT_EQ(report.heuristic("roundrobin")->cost.exact(), make_rational(25, 8));
  EXPECT_EQ(report.digest.size(), 16U);
  EXPECT_EQ(report.digest, instance_digest(gen_tribes(2, 2)));
  EXPECT_NE(report.digest, instance_digest(gen_tribes(2, 3)));
}

TEST(Gap, OrAndConstant) {
  const auto orf = Instance::exact(ReadOnceDnf::from_terms(3, {{0}, {1}, {2}}).dnf(),
                                   {Rational(3), Rational(1), Rational(2)},
                                   fractions({{1, 3}, {1, 2}, {3, 4}}));
  const auto report = gap_report(orf);
  EXPECT_EQ(*report.ratio, 1);
  EXPECT_EQ(*report.opt_a, make_rational(19, 8));
  EXPECT_EQ(report.heuristic("alg1"), nullptr);
  const auto constant = Instance::exact(ConstantFormula{2, true}, {Rational(1), Rational(1)},
                                        fractions({{1, 2}, {1, 2}}));
  const auto c = gap_report(constant);
  EXPECT_EQ(*c.opt_a, 0);
  EXPECT_EQ(*c.opt_n, 0);
  EXPECT_EQ(*c.ratio, 1);
}

TEST(Gap, NonDnfSkipsDnfHeuristics) {
  const auto report = gap_report(gen_binary_tree(1, make_rational(1, 4)).instance);
  EXPECT_EQ(report.heuristic("bu"), nullptr);
  EXPECT_NE(report.heuristic("cost_sorted"), nullptr);
  EXPECT_TRUE(gap_report_violations(report).empty());
}

TEST(Gap, MonteCarlo) {
  GapOptions options;
  options.monte_carlo = true;
  options.samples = 2000;
  options.seed = 7;
  const auto inst = gen_ucap(4, 2);
  const auto report = gap_report(inst, options);
  EXPECT_EQ(report.mode, "mc");
  EXPECT_FALSE(report.opt_a);
  EXPECT_FALSE(report.ratio);
  ASSERT_NE(report.heuristic("roundrobin"), nullptr);
  EXPECT_TRUE(report.heuristic("roundrobin")->stderr_of_mean.has_value());
  EXPECT_EQ(gap_report_to_json(report), gap_report_to_json(gap_report(inst, options)));
  EXPECT_THROW(gap_report(inst), ModeMismatch);
}

TEST(Gap, Json) {
  const auto j = nlohmann::json::parse(gap_report_to_json(gap_report(gen_tribes(2, 2))));
  EXPECT_EQ(j.at("opt_a"), "21/8");
  EXPECT_EQ(j.at("ratio"), "25/21");
}

TEST(Sweep, GridExpansion) {
  const auto specs = expand_grid("tribes", {{"k", "2..3"}, {"w", "1,4"}});
  ASSERT_EQ(specs.size(), 4U);
  EXPECT_EQ(specs[1].params.at("k"), "2");
  EXPECT_EQ(specs[1].params.at("w"), "4");
  EXPECT_EQ(specs[2].params.at("k"), "3");
  const auto diag = expand_grid("tribes", {{"k", "2..4"}, {"w", "@k"}});
  ASSERT_EQ(diag.size(), 3U);
  EXPECT_EQ(diag[2].params.at("w"), "4");
  EXPECT_TRUE(expand_grid("tribes", {{"k", "4..2"}, {"w", "2"}}).empty());
  EXPECT_THROW(expand_grid("tribes", {{"z", "2"}}), ParameterError);
  EXPECT_THROW(family_parameters("nope"), ParameterError);
}

TEST(Sweep, TribesDiagonal) {
  const auto csv = sweep_csv("tribes", expand_grid("tribes", {{"k", "2..4"}, {"w", "@k"}}));
  const auto rows = csv_rows(csv);
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"family", "k", "w", "n", "opt_a", "opt_n", "ratio", "alg1_cost",
                                               "roundrobin_cost", "termorder_cost", "cost_sorted_cost"}));
  EXPECT_EQ(rows[1][6], "25/21");
  EXPECT_EQ(rows[2][6], "1655/1183");
  EXPECT_EQ(rows[3][6], "118187/74555");
  Rational previous(0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto ratio = parse_rational(rows[i][6]);
    EXPECT_GE(ratio, previous);
    previous = ratio;
  }
}

TEST(Sweep, Address) {
  const auto rows = csv_rows(sweep_csv("address", expand_grid("address", {{"d", "2"}, {"shared_cost", "1,1/2"}})));
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[1][4], "3/1");
  EXPECT_EQ(rows[1][5], "9/2");
  EXPECT_EQ(rows[2][4], "2/1");
  EXPECT_EQ(rows[2][5], "7/2");
  EXPECT_EQ(rows[1][7], "");
}

TEST(Sweep, EmptyAndStable) {
  EXPECT_EQ(sweep_csv("geomcost", {}), "family,l,n,opt_a,opt_n,ratio,alg1_cost,roundrobin_cost,termorder_cost,"
                                       "cost_sorted_cost\n");
  const auto specs = expand_grid("tribes", {{"k", "1..3"}, {"w", "1..3"}});
  SweepOptions threaded;
  threaded.threads = 3;
  const auto serial = sweep_csv("tribes", specs);
  EXPECT_EQ(serial, sweep_csv("tribes", specs));
  EXPECT_EQ(serial, sweep_csv("tribes", specs, threaded));
}

TEST(Sweep, MonteCarloIsSeeded) {
  SweepOptions options;
  options.gap.monte_carlo = true;
  options.gap.samples = 500;
  options.gap.seed = 11;
  const auto specs = expand_grid("ucap", {{"m", "4,6"}, {"l", "2"}});
  const auto a = sweep_csv("ucap", specs, options);
  options.threads = 2;
  EXPECT_EQ(a, sweep_csv("ucap", specs, options));
  const auto rows = csv_rows(a);
  EXPECT_EQ(rows[1][4], "");
  EXPECT_FALSE(rows[1][8].empty());
}

}  // namespace
