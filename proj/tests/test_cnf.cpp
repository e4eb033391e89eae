#include <doctest.h>

#include "mcsat/cnf.hpp"
#include "mcsat/dimacs.hpp"
#include "support/build.hpp"

using namespace mcsat;

TEST_CASE("literal encoding") {
  for (int x : {1, -1, 7, -42}) CHECK(Literal::from_dimacs(x).to_dimacs() == x);
  CHECK(lit(3).code() == 6);
  CHECK(lit(-3).code() == 7);
  CHECK(lit(3).neg() == lit(-3));
  CHECK(lit(3) < lit(-3));
  CHECK(lit(-3) < lit(4));
}

TEST_CASE("clauses are stored sorted and counted with repeats") {
  Formula f = cnf({{3, -1, 2}, {1, 1, -2}});
  CHECK(f.clause(0) == Clause{lit(-1), lit(2), lit(3)});
  CHECK(f.count(lit(1)) == 2);
  CHECK(f.occurrences(lit(1)).size() == 1);
  CHECK(f.degree(1) == 3);
  CHECK(f.degree(2) == 2);
  CHECK(f.length() == 6);
  CHECK_NOTHROW(f.verify_index());
}

TEST_CASE("index survives removals and replacements") {
  Formula f = cnf({{1, 2, 3}, {-1, 2}, {-2, -3}});
  f.remove_literal(0, lit(2));
  f.remove_clause(1);
  f.replace_clause(2, Clause{lit(4), lit(-3)});
  CHECK_NOTHROW(f.verify_index());
  CHECK(f.num_clauses() == 2);
  CHECK(f.count(lit(2)) == 0);
  CHECK(f.length() == 4);
  CHECK(f.variables() == std::vector<Var>{1, 3, 4});
  Formula g = f.compacted();
  CHECK(g.id_bound() == 2);
  CHECK(same_clauses(f, g));
}

TEST_CASE("empty clause bookkeeping") {
  Formula f = cnf({{1}, {-1, 2}});
  CHECK_FALSE(f.has_empty_clause());
  f.remove_literal(0, lit(1));
  CHECK(f.has_empty_clause());
  CHECK_FALSE(f.empty());
}

TEST_CASE("assign") {
  Formula f = cnf({{1, 2}, {-1, 3}, {-1, -3, 4}, {2, 4}});
  Formula g = assign(f, {lit(1)});
  CHECK(same_clauses(g, cnf({{3}, {-3, 4}, {2, 4}})));
  CHECK_THROWS_AS(assign(f, {lit(1), lit(-1)}), ContradictionError);
  Formula h = assign(f, {lit(-2), lit(-4)});
  CHECK(h.has_empty_clause());
}

TEST_CASE("fresh variables") {
  Formula f = cnf({{1, 5}});
  CHECK(f.next_fresh_variable() == 6);
  CHECK(f.take_fresh_variable() == 6);
  CHECK(f.next_fresh_variable() == 7);
}

TEST_CASE("neighbor statistics on the labelled example") {
  // x=1, z1..z4=2..5, y1..y3=6..8, l1=9, l2=10; filler clauses fix the degrees
  Formula f = cnf({{1, 6, 2},
                   {1, 7, -2, 9},
                   {1, 8, -5},
                   {-1, 3, 4, -10},
                   {-1, 5},
                   {2, 3, 4, 5, 6, 7, 8, 9, 10},
                   {2, 3, 4, 5, 6, 7, 8, 9, 10},
                   {2, 3, 4, 5, 6, 7, 8},
                   {3, 4}});
  for (int v = 1; v <= 5; ++v) CHECK(f.degree(v) == 5);
  for (int v = 6; v <= 8; ++v) CHECK(f.degree(v) == 4);
  CHECK(f.degree(9) == 3);
  CHECK(f.degree(10) == 3);

  auto s = neighbor_stats(f, lit(1));
  CHECK(s.get(s.n, 3) == 1);
  CHECK(s.get(s.n3plus, 3) == 1);
  CHECK(s.get(s.t1, 3) == 1);
  CHECK(s.get(s.n, 4) == 3);
  CHECK(s.get(s.n3plus, 4) == 3);
  CHECK(s.get(s.t1, 4) == 3);
  CHECK(s.get(s.n, 5) == 3);  // z1, -z1, -z4
  CHECK(s.get(s.n3plus, 5) == 3);
  CHECK(s.get(s.t1, 5) == 1);
  CHECK(s.get(s.t2, 5) == 1);

  auto t = neighbor_stats(f, lit(-1));
  CHECK(t.get(t.n, 5) == 3);
  CHECK(t.get(t.n2, 5) == 1);
  CHECK(t.get(t.n3plus, 5) == 2);
  CHECK(t.get(t.n, 3) == 1);
  CHECK(t.get(t.n, 4) == 0);
}

TEST_CASE("neighbor statistics reject repeated neighbors") {
  CHECK_THROWS_AS(neighbor_stats(cnf({{1, 2}, {1, 2, 3}}), lit(1)), StructuralError);
}

TEST_CASE("incidence graph of a (2,3)-literal") {
  // clauses of x: {1,2,3}, {1,4,5}; of -x: {-1,2,6}, {-1,7,8}, {-1,-4,9}
  Formula f = cnf({{1, 2, 3}, {1, 4, 5}, {-1, 2, 6}, {-1, 7, 8}, {-1, -4, 9}});
  auto g = incidence_graph(f, lit(1));
  CHECK(g.x_side.size() == 2);
  CHECK(g.y_side.size() == 3);
  CHECK(g.edges.size() == 2);
  CHECK(has_matching_size_2(g));
  auto d = vertex_degrees(g);
  CHECK(d == std::vector<int>{1, 1, 1, 0, 1});
  CHECK(degree_zero_vertices(g).size() == 1);
  CHECK_THROWS(incidence_graph(f, lit(2)));
}

TEST_CASE("matching needs two disjoint edges") {
  // both x clauses meet only the first -x clause
  Formula f = cnf({{1, 2, 3}, {1, 4, 5}, {-1, 2, 4}, {-1, 7, 8}, {-1, 9, 10}});
  auto g = incidence_graph(f, lit(1));
  CHECK_FALSE(has_matching_size_2(g));
  CHECK(degree_zero_vertices(g).size() == 2);
}

TEST_CASE("dimacs parse and emit") {
  Formula f = parse_dimacs("c comment\np cnf 4 3\n1 -2 0\n2 3\n-4 0 4 1 0\n%\n0\n");
  CHECK(f.num_clauses() == 3);
  CHECK(same_clauses(f, cnf({{1, -2}, {2, 3, -4}, {4, 1}})));
  CHECK(f.next_fresh_variable() == 5);
  Formula g = parse_dimacs(emit_dimacs(f));
  CHECK(same_clauses(f, g));
  CHECK(emit_dimacs(f).rfind("p cnf 4 3\n", 0) == 0);
}

TEST_CASE("dimacs errors carry line numbers") {
  CHECK_THROWS_AS(parse_dimacs(""), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n"), ParseError);
  try {
    parse_dimacs("p cnf 2 1\nc\n1 a 0\n");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("dimacs tolerates a wrong clause count") {
  CHECK(parse_dimacs("p cnf 2 5\n1 2 0\n").num_clauses() == 1);
}
