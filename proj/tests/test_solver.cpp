#include <doctest.h>

#include "mcsat/harness.hpp"
#include "mcsat/solver.hpp"
#include "support/build.hpp"

using namespace mcsat;

namespace {

bool truth(const Formula& f) { return oracles::brute_force_sat(raw(f)); }

SatResult expected(const Formula& f) { return truth(f) ? SatResult::Sat : SatResult::Unsat; }

}  // namespace

TEST_CASE("trivial formulas") {
  CHECK(solve(Formula{}).result == SatResult::Sat);
  CHECK(solve(cnf({{1}})).result == SatResult::Sat);
  CHECK(solve(cnf({{1}, {-1}})).result == SatResult::Unsat);
  Formula e = cnf({{1}});
  e.remove_literal(0, lit(1));
  CHECK(solve(e).result == SatResult::Unsat);
}

TEST_CASE("select_step on hand-built formulas") {
  SUBCASE("degree 6 goes to step 3 with the smallest such variable") {
    Formula f = cnf({{1, 2, 3}, {1, -2, 4}, {-1, 2, 5}, {-1, -3, 4}, {1, 3, -5}, {-1, -4, 5}, {2, -3, -4}, {-2, 3, -5}});
    REQUIRE(f.degree(1) == 6);
    auto d = select_step(f);
    CHECK(d.step == 3);
    CHECK(d.pivot->var == 1);
    CHECK(d.branch_sets.size() == 2);
  }
  SUBCASE("a (1,4)-literal goes to step 4") {
    // 1 occurs once positively and four times negatively
    Formula f = cnf({{1, 2, 3}, {-1, 2, 4}, {-1, -2, 3}, {-1, -3, 4}, {-1, -4, 2}, {-2, -3, -4}});
    REQUIRE(f.degree(1) == 5);
    auto d = select_step(f);
    CHECK(d.step == 4);
    CHECK(*d.pivot == lit(1));
    CHECK(d.branch_sets[0] == std::vector<Literal>{lit(1), lit(-2), lit(-3)});
    CHECK(d.branch_sets[1] == std::vector<Literal>{lit(-1)});
  }
  SUBCASE("all degree 3 goes to step 16") {
    Formula f = cnf({{1, 2, 3}, {-1, 2, 4}, {1, -3, -4}, {-2, 3, 4}});
    for (Var v : f.variables()) REQUIRE(f.degree(v) == 3);
    auto d = select_step(f);
    CHECK(d.step == 16);
    CHECK(d.branch_sets.empty());
  }
  SUBCASE("a (2,2)-variable without a (1,3)-literal goes to step 15") {
    Formula f = cnf({{1, 2, 3}, {1, -2, -3}, {-1, 2, -3}, {-1, -2, 3}});
    auto d = select_step(f);
    CHECK(d.step == 15);
    CHECK(d.pivot->var == 1);
  }
  SUBCASE("low degree is an internal error") {
    CHECK_THROWS_AS(select_step(cnf({{1, 2}, {-1, 2}})), InternalError);
    CHECK_THROWS_AS(select_step(Formula{}), InternalError);
  }
}

TEST_CASE("step 13 split") {
  // 5-variables 1..3 only meet each other in 3-clauses; 4 and 5 live apart
  Formula f = cnf({{1, 2, 3}, {1, -2, 3}, {-1, 2, -3}, {-1, -2, 3}, {1, 2, -3}, {4, 5}, {-4, 5}});
  auto [five, rest] = check_step13_split(f);
  CHECK(five.num_clauses() == 5);
  CHECK(rest.num_clauses() == 2);
  CHECK_THROWS_AS(check_step13_split(cnf({{1, 2, 3}, {1, -2, 3}, {-1, 2, -3}, {-1, -2, 3}, {1, 2, -3, 4}})),
                  InternalError);
}

TEST_CASE("solve agrees with brute force on the small corpus") {
  for (int i = 0; i < 600; ++i) {
    Formula f = generate(corpus_config(4242, i, 12));
    CHECK(solve(f).result == expected(f));
  }
}

TEST_CASE("solve agrees with brute force on profiled formulas") {
  for (int i = 0; i < 60; ++i) {
    ProfileConfig c;
    c.num_vars = 18 + i % 5;
    c.seed = 9000 + i;
    c.share3 = i % 3 == 0 ? 0.0 : 0.05;
    c.share4 = i % 3 == 2 ? 0.1 : 0.0;
    c.len_max = 3 + i % 2;
    Formula f = generate_profiled(c);
    auto r = solve(f);
    CHECK(r.result == expected(f));
    SolveOptions full;
    full.full_tree = true;
    CHECK(solve(f, full).result == r.result);
  }
}

TEST_CASE("fallback subsolver") {
  CHECK(fallback_subsolver(cnf({{1, 2}, {-1, 2}, {1, -2}, {-1, -2}}), WeightTable::reference()) == SatResult::Unsat);
  CHECK(fallback_subsolver(cnf({{1, 2, 3}, {-1, -2}}), WeightTable::reference()) == SatResult::Sat);
}

TEST_CASE("node budget") {
  ProfileConfig c;
  c.num_vars = 40;
  c.seed = 3;
  SolveOptions o;
  o.node_budget = 1;
  auto r = solve(generate_profiled(c), o);
  CHECK(r.result == SatResult::BudgetExceeded);
}

TEST_CASE("audit_node flags short decreases") {
  WeightTable w = WeightTable::reference();
  Formula parent = cnf({{1, 2, 3}, {1, -2, 4}, {-1, 2, 5}, {-1, -3, 4}, {1, 3, -5}, {-1, -4, 5}, {2, -3, -4}, {-2, 3, -5}});
  BranchDecision d{3, lit(1), {{lit(1)}, {lit(-1)}}, std::nullopt};
  // pretend both children are the parent itself: zero decrease
  std::vector<Formula> assigned{parent, parent};
  std::vector<ReductionOutcome> reduced{{parent, {}, {}}, {parent, {}, {}}};
  auto nc = audit_node(parent, d, assigned, reduced, w);
  CHECK(nc.deltas == std::vector<double>{0, 0});
  int min_fail = 0, sum_fail = 0;
  for (auto& [k, m] : nc.failures) {
    min_fail += k == "bound-min";
    sum_fail += k == "bound-sum";
  }
  CHECK(min_fail == 2);
  CHECK(sum_fail == 1);
}

TEST_CASE("audit on profiled formulas: bounds and structure hold") {
  SolveOptions o;
  o.audit = true;
  o.full_tree = true;
  o.node_budget = 20000;
  long nodes = 0, seen = 0;
  o.on_node = [&](const NodeAudit& n) {
    ++seen;
    CHECK(n.node_id >= 0);
  };
  for (int i = 0; i < 12; ++i) {
    ProfileConfig c;
    c.num_vars = 30;
    c.seed = 100 + i;
    c.len_max = 3;
    auto r = solve(generate_profiled(c), o);
    nodes += r.stats.nodes - r.stats.fallback_nodes;
    for (const auto& f : r.failures) {
      CHECK(f.kind != "bound-min");
      CHECK(f.kind != "bound-sum");
      CHECK(f.kind != "structure");
      CHECK(f.kind != "stats");
      CHECK(f.kind != "matching");
      CHECK(f.kind != "degree-zero");
      CHECK(f.kind != "shift");
    }
  }
  CHECK(seen == nodes);
}

TEST_CASE("two-clause detector") {
  Formula f = cnf({{1, 2}, {1, 3}, {-1, 3}, {1, -3}, {-1, -3}, {2, 4}, {-2, 4}, {2, -4}, {-2, -4}});
  CHECK(f.degree(1) == 5);
  CHECK(f.degree(2) == 5);
  CHECK(has_two_clause_of_5_variables(f));
  CHECK_FALSE(has_two_clause_of_5_variables(cnf({{1, 2}})));
}
