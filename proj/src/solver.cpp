#include "mcsat/solver.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mcsat {

std::string to_string(SatResult r) {
  switch (r) {
    case SatResult::Sat: return "SAT";
    case SatResult::Unsat: return "UNSAT";
    default: return "BUDGET_EXCEEDED";
  }
}

namespace {

bool contains(const Clause& c, Literal l) { return std::find(c.begin(), c.end(), l) != c.end(); }

BranchDecision two_way(int step, Literal x) { return BranchDecision{step, x, {{x}, {x.neg()}}, std::nullopt}; }

// S1 = {x} plus the negation of every other literal of its unique clause
BranchDecision one_clause_branch(int step, const Formula& f, Literal x) {
  const Clause& c = f.clause(*f.occurrences(x).begin());
  std::vector<Literal> s1{x};
  for (Literal y : c)
    if (!(y == x)) s1.push_back(y.neg());
  return BranchDecision{step, x, {s1, {x.neg()}}, std::nullopt};
}

int two_clauses_on(const Formula& f, Var v) {
  int k = 0;
  for (Literal x : {Literal{v, true}, Literal{v, false}})
    for (ClauseId id : f.occurrences(x))
      if (f.clause(id).size() == 2) ++k;
  return k;
}

std::vector<ClauseId> clauses_on(const Formula& f, Var v) {
  std::set<ClauseId> s(f.occurrences(Literal{v, true}).begin(), f.occurrences(Literal{v, true}).end());
  s.insert(f.occurrences(Literal{v, false}).begin(), f.occurrences(Literal{v, false}).end());
  return {s.begin(), s.end()};
}

int low_degree_neighbors(const Formula& f, Var v) {
  auto a = neighbor_stats(f, Literal{v, true});
  auto b = neighbor_stats(f, Literal{v, false});
  int k = 0;
  for (int i = 1; i <= 4; ++i) k += a.get(a.n, i) + b.get(b.n, i);
  return k;
}

// the literal of v occurring twice when v is a (2,3)/(3,2)-variable
std::optional<Literal> two_three_literal(const Formula& f, Var v) {
  Literal p{v, true};
  if (f.count(p) == 2 && f.count(p.neg()) == 3) return p;
  if (f.count(p) == 3 && f.count(p.neg()) == 2) return p.neg();
  return std::nullopt;
}

struct Labeling {
  ClauseId c1, c2, d1, d2, d3;
};

std::vector<Labeling> labelings(const Formula& f, Literal x) {
  std::vector<ClauseId> cs(f.occurrences(x).begin(), f.occurrences(x).end());
  std::vector<ClauseId> ds(f.occurrences(x.neg()).begin(), f.occurrences(x.neg()).end());
  std::vector<Labeling> out;
  do {
    std::vector<ClauseId> dd = ds;
    do {
      out.push_back({cs[0], cs[1], dd[0], dd[1], dd[2]});
    } while (std::next_permutation(dd.begin(), dd.end()));
  } while (std::next_permutation(cs.begin(), cs.end()));
  return out;
}

std::vector<Literal> five_literals(const Formula& f, ClauseId id, Var skip) {
  std::vector<Literal> out;
  for (Literal y : f.clause(id))
    if (y.var != skip && f.degree(y.var) == 5) out.push_back(y);
  return out;
}

std::optional<BranchDecision> find_step9(const Formula& f, const std::vector<Var>& five) {
  for (Var v : five) {
    auto x = two_three_literal(f, v);
    if (!x) continue;
    for (const auto& lb : labelings(f, *x))
      for (Literal y1 : five_literals(f, lb.c1, v)) {
        if (!contains(f.clause(lb.d1), y1)) continue;
        for (Literal y2 : five_literals(f, lb.c2, v))
          if (contains(f.clause(lb.d2), y2) || contains(f.clause(lb.d2), y2.neg())) {
            BranchDecision d = two_way(9, y1);
            d.anchor = *x;
            return d;
          }
      }
  }
  return std::nullopt;
}

std::optional<BranchDecision> find_step10(const Formula& f, const std::vector<Var>& five) {
  for (Var v : five) {
    auto x = two_three_literal(f, v);
    if (!x) continue;
    for (const auto& lb : labelings(f, *x))
      for (Literal y1 : five_literals(f, lb.c1, v)) {
        if (!contains(f.clause(lb.d1), y1.neg())) continue;
        for (Literal y2 : five_literals(f, lb.c2, v)) {
          if (!contains(f.clause(lb.d2), y2.neg())) continue;
          auto zs = five_literals(f, lb.d3, v);
          if (zs.empty())
            throw InternalError("no 5-literal in " + to_string(f.clause(lb.d3)) + " for " + to_string(*x));
          BranchDecision d = two_way(10, zs.front());
          d.anchor = *x;
          return d;
        }
      }
  }
  return std::nullopt;
}

}  // namespace

BranchDecision select_step(const Formula& f) {
  if (f.empty() || f.has_empty_clause()) throw InternalError("select_step: formula is empty or has an empty clause");
  auto vars = f.variables();
  int maxdeg = 0;
  for (Var v : vars) {
    int d = f.degree(v);
    if (d < 3) throw InternalError("select_step: variable " + std::to_string(v) + " has degree " + std::to_string(d));
    maxdeg = std::max(maxdeg, d);
  }
  if (maxdeg >= 6) {
    for (Var v : vars)
      if (f.degree(v) == maxdeg) return two_way(3, Literal{v, true});
  }
  std::vector<Var> five, four;
  for (Var v : vars) {
    if (f.degree(v) == 5) five.push_back(v);
    if (f.degree(v) == 4) four.push_back(v);
  }
  for (Var v : five)
    for (Literal x : {Literal{v, true}, Literal{v, false}})
      if (f.count(x) == 1 && f.count(x.neg()) == 4) return one_clause_branch(4, f, x);
  for (Var v : five)
    if (two_clauses_on(f, v) >= 2) return two_way(5, Literal{v, true});
  for (Var v : five)
    for (ClauseId id : clauses_on(f, v)) {
      const Clause& c = f.clause(id);
      if (c.size() == 2 && f.degree(c[0].var) == 5 && f.degree(c[1].var) == 5) return two_way(6, Literal{v, true});
    }
  for (Var v : five)
    if (two_clauses_on(f, v) >= 1) return two_way(7, Literal{v, true});
  for (Var v : five)
    if (low_degree_neighbors(f, v) >= 2) return two_way(8, Literal{v, true});
  for (Var v : five)
    if (!two_three_literal(f, v))
      throw InternalError("variable " + std::to_string(v) + " of degree 5 is not a (2,3)-variable after step 8");
  if (auto d = find_step9(f, five)) return *d;
  if (auto d = find_step10(f, five)) return *d;
  for (Var v : five)
    for (ClauseId id : clauses_on(f, v))
      if (f.clause(id).size() >= 4) return two_way(11, Literal{v, true});
  for (Var v : five)
    for (ClauseId id : clauses_on(f, v))
      for (Literal y : f.clause(id))
        if (f.degree(y.var) <= 4) return two_way(12, Literal{v, true});
  if (!five.empty()) return BranchDecision{13, std::nullopt, {}, std::nullopt};
  for (Var v : four)
    for (Literal x : {Literal{v, true}, Literal{v, false}})
      if (f.count(x) == 1 && f.count(x.neg()) == 3) return one_clause_branch(14, f, x);
  for (Var v : four)
    if (f.count(Literal{v, true}) == 2) return two_way(15, Literal{v, true});
  if (!four.empty()) throw InternalError("4-variable left that is neither (1,3) nor (2,2)");
  return BranchDecision{16, std::nullopt, {}, std::nullopt};
}

std::pair<Formula, Formula> check_step13_split(const Formula& f) {
  std::vector<Clause> a, b;
  std::set<Var> va, vb;
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    bool on5 = std::any_of(c.begin(), c.end(), [&](Literal l) { return f.degree(l.var) == 5; });
    if (on5) {
      if (c.size() > 3) throw InternalError("split: clause " + to_string(c) + " on 5-variables is longer than 3");
      for (Literal l : c) {
        if (f.degree(l.var) != 5) throw InternalError("split: clause " + to_string(c) + " mixes degrees");
        va.insert(l.var);
      }
      a.push_back(c);
    } else {
      for (Literal l : c) vb.insert(l.var);
      b.push_back(c);
    }
  }
  for (Var v : va)
    if (vb.count(v)) throw InternalError("split: variable " + std::to_string(v) + " is on both sides");
  return {Formula(a, f.next_fresh_variable()), Formula(b, f.next_fresh_variable())};
}

bool has_two_clause_of_5_variables(const Formula& f) {
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    if (c.size() == 2 && c[0].var != c[1].var && f.degree(c[0].var) == 5 && f.degree(c[1].var) == 5) return true;
  }
  return false;
}

NodeCheck audit_node(const Formula& parent, const BranchDecision& d, const std::vector<Formula>& assigned,
                     const std::vector<ReductionOutcome>& reduced, const WeightTable& w) {
  NodeCheck nc;
  const double tol = 1e-9;
  double mp = mu(parent, w);
  for (const auto& r : reduced) nc.deltas.push_back(mp - mu(r.formula, w));
  nc.bound = audit_bound(d.step, w);
  auto fail = [&](const std::string& kind, const std::string& detail) { nc.failures.emplace_back(kind, detail); };
  if (nc.bound) {
    double sum = std::accumulate(nc.deltas.begin(), nc.deltas.end(), 0.0);
    for (double x : nc.deltas)
      if (x < nc.bound->min - tol) {
        std::ostringstream os;
        os << "child decrease " << x << " below " << nc.bound->min;
        fail("bound-min", os.str());
      }
    if (sum < nc.bound->sum - tol) {
      std::ostringstream os;
      os << "decrease sum " << sum << " below " << nc.bound->sum;
      fail("bound-sum", os.str());
    }
  }
  if (d.step >= 9 && d.step <= 12) {
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (reduced[i].applied.empty()) continue;
      double extra = mu(assigned[i], w) - mu(reduced[i].formula, w);
      if (extra < w.w3() - 1 - tol) {
        std::ostringstream os;
        os << "child " << i << " reduction lowered mu by " << extra << " < w3-1 = " << w.w3() - 1 << " (rules";
        for (const auto& a : reduced[i].applied) os << ' ' << a.rule;
        os << ")";
        fail("extra-decrease", os.str());
      }
    }
  }
  if (d.step == 10 && d.anchor && !resolution_keeps_degrees(assigned.at(0), d.anchor->var))
    fail("step10-resolution", "resolution on " + std::to_string(d.anchor->var) + " is not degree-preserving in the z=1 child");
  if ((d.step == 11 || d.step == 12) && d.pivot) {
    Literal x = *d.pivot;
    auto sx = neighbor_stats(parent, x), sn = neighbor_stats(parent, x.neg());
    int low = 0, both = 0;
    for (auto [i, k] : sx.n)
      if (i <= 4) low += k;
    for (auto [i, k] : sn.n)
      if (i <= 4) low += k;
    for (auto [i, k] : sx.t2) both += k;
    for (auto [i, k] : sn.t2) both += k;
    bool untouched = std::all_of(reduced.begin(), reduced.end(), [](const ReductionOutcome& r) { return r.applied.empty(); });
    if (d.step == 11) {
      int long_clauses = 0;
      for (ClauseId id : parent.occurrences(x))
        if (parent.clause(id).size() >= 4) ++long_clauses;
      for (ClauseId id : parent.occurrences(x.neg()))
        if (parent.clause(id).size() >= 4) ++long_clauses;
      nc.shift_case = low == 0 && both == 0 && long_clauses == 1 && untouched;
    } else {
      nc.shift_case = both == 0 && untouched;
    }
    if (nc.shift_case) {
      nc.shift_discharged = std::any_of(reduced.begin(), reduced.end(),
                                        [](const ReductionOutcome& r) { return has_two_clause_of_5_variables(r.formula); });
      if (!nc.shift_discharged) fail("shift", "no child has a 2-clause on two 5-variables");
    }
  }
  return nc;
}

namespace {

struct BudgetHit {};

class Search {
 public:
  explicit Search(const SolveOptions& o) : opt_(o) {}

  SolveReport report;

  bool node(const Formula& f, long parent, const std::vector<RuleApplication>* pre) {
    tick();
    NodeAudit na;
    na.node_id = next_id_++;
    na.parent_id = parent;
    const WeightTable& w = opt_.weights;
    if (f.empty() || f.has_empty_clause()) {
      na.mu = mu(f, w);
      emit(na);
      return f.empty();
    }
    Formula g;
    if (pre) {
      g = f;
      na.rule_applications = *pre;
    } else {
      auto out = reduce(f, w);
      g = std::move(out.formula);
      na.rule_applications = std::move(out.applied);
    }
    na.mu = mu(g, w);
    if (opt_.audit) check_reduced(g, na);
    if (g.empty() || g.has_empty_clause()) {
      emit(na);
      return g.empty();
    }
    BranchDecision d = select_step(g);
    na.step = d.step;
    na.pivot = d.pivot;
    ++report.stats.step_hits[d.step];
    if (opt_.audit && d.step >= 11 && d.step <= 13) check_incidence(g, na);
    if (d.step == 13) {
      auto [f5, rest] = check_step13_split(g);
      emit(na);
      bool sat5 = fallback(f5);
      if (!sat5 && !opt_.full_tree) return false;
      return node(rest, na.node_id, nullptr) && sat5;
    }
    if (d.step == 16) {
      emit(na);
      return fallback(g);
    }
    if (!opt_.audit) {
      emit(na);
      bool sat = false;
      for (const auto& s : d.branch_sets) {
        auto out = reduce(assign(g, s), w);
        sat = node(out.formula, na.node_id, &out.applied) || sat;
        if (sat && !opt_.full_tree) break;
      }
      return sat;
    }
    std::vector<Formula> assigned;
    std::vector<ReductionOutcome> reduced;
    for (const auto& s : d.branch_sets) {
      assigned.push_back(assign(g, s));
      reduced.push_back(reduce(assigned.back(), w));
    }
    NodeCheck nc = audit_node(g, d, assigned, reduced, w);
    na.delta_children = nc.deltas;
    na.bound = nc.bound;
    na.shift_case = nc.shift_case;
    na.shift_discharged = nc.shift_discharged;
    if (nc.bound) ++report.stats.bound_checks;
    if (d.step >= 9 && d.step <= 12)
      for (const auto& r : reduced)
        if (!r.applied.empty()) ++report.stats.extra_decrease_checks;
    if (nc.shift_case) ++report.stats.shift_cases;
    if (nc.shift_discharged) ++report.stats.shift_discharged;
    for (auto& [k, msg] : nc.failures) fail(na, k, msg);
    emit(na);
    bool sat = false;
    for (auto& r : reduced) {
      sat = node(r.formula, na.node_id, &r.applied) || sat;
      if (sat && !opt_.full_tree) break;
    }
    return sat;
  }

  bool fallback(const Formula& f) {
    tick();
    ++report.stats.fallback_nodes;
    Formula g = reduce(f, opt_.weights).formula;
    if (g.empty()) return true;
    if (g.has_empty_clause()) return false;
    Var best = 0;
    int bd = -1;
    for (Var v : g.variables())
      if (g.degree(v) > bd) {
        bd = g.degree(v);
        best = v;
      }
    Literal x{best, true};
    return fallback(assign(g, {x})) || fallback(assign(g, {x.neg()}));
  }

 private:
  void tick() {
    if (++report.stats.nodes > opt_.node_budget) throw BudgetHit{};
  }

  void emit(const NodeAudit& na) {
    if (opt_.audit && opt_.on_node) opt_.on_node(na);
  }

  void fail(const NodeAudit& na, const std::string& kind, const std::string& detail) {
    report.failures.push_back(AuditFailure{na.node_id, na.step, kind, detail});
  }

  void check_reduced(const Formula& g, const NodeAudit& na) {
    try {
      g.verify_index();
    } catch (const StructuralError& e) {
      fail(na, "index", e.what());
    }
    for (const auto& msg : reduced_structure_violations(g)) fail(na, "structure", msg);
    for (Var v : g.variables())
      for (Literal l : {Literal{v, true}, Literal{v, false}}) {
        try {
          auto s = neighbor_stats(g, l);
          std::set<int> keys;
          for (auto* m : {&s.n, &s.n2, &s.n3plus, &s.t1, &s.t2})
            for (auto [i, k] : *m) keys.insert(i);
          for (int i : keys) {
            if (s.get(s.n, i) != s.get(s.n2, i) + s.get(s.n3plus, i))
              fail(na, "stats", "n != n2 + n3plus for literal " + to_string(l));
            if (s.get(s.n, i) != s.get(s.t1, i) + 2 * s.get(s.t2, i))
              fail(na, "stats", "n != t1 + 2 t2 for literal " + to_string(l));
          }
        } catch (const StructuralError& e) {
          fail(na, "stats", e.what());
        }
      }
  }

  void check_incidence(const Formula& g, const NodeAudit& na) {
    for (Var v : g.variables()) {
      if (g.degree(v) != 5) continue;
      auto x = two_three_literal(g, v);
      if (!x) continue;
      ++report.stats.matching_checks;
      auto gx = incidence_graph(g, *x);
      if (has_matching_size_2(gx)) fail(na, "matching", "G_x for literal " + to_string(*x) + " has a matching of size 2");
      auto deg = vertex_degrees(gx);
      bool small = std::all_of(deg.begin(), deg.end(), [](int k) { return k <= 2; });
      if (small && degree_zero_vertices(gx).size() < 2)
        fail(na, "degree-zero", "G_x for literal " + to_string(*x) + " has fewer than two isolated vertices");
    }
  }

  const SolveOptions& opt_;
  long next_id_ = 0;
};

}  // namespace

SolveReport solve(const Formula& f, const SolveOptions& opt) {
  Search s(opt);
  try {
    s.report.result = s.node(f, -1, nullptr) ? SatResult::Sat : SatResult::Unsat;
  } catch (const BudgetHit&) {
    s.report.result = SatResult::BudgetExceeded;
  }
  return s.report;
}

SatResult fallback_subsolver(const Formula& f, const WeightTable& w, long node_budget) {
  SolveOptions o;
  o.weights = w;
  o.node_budget = node_budget;
  Search s(o);
  try {
    return s.fallback(f) ? SatResult::Sat : SatResult::Unsat;
  } catch (const BudgetHit&) {
    return SatResult::BudgetExceeded;
  }
}

}  // namespace mcsat
