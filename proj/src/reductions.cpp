#include "mcsat/reductions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mcsat {

std::string RuleSite::describe() const {
  std::ostringstream os;
  os << "R" << rule;
  if (!clauses.empty()) {
    os << " clauses";
    for (ClauseId c : clauses) os << ' ' << c;
  }
  if (!literals.empty()) {
    os << " literals";
    for (Literal l : literals) os << ' ' << l.to_dimacs();
  }
  if (var) os << " var " << var;
  return os.str();
}

namespace {

bool contains(const Clause& c, Literal l) { return std::find(c.begin(), c.end(), l) != c.end(); }

Clause without(const Clause& c, Literal l) {
  Clause r;
  for (Literal y : c)
    if (!(y == l)) r.push_back(y);
  return r;
}

std::vector<ClauseId> common(const std::set<ClauseId>& a, const std::set<ClauseId>& b) {
  std::vector<ClauseId> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

[[noreturn]] void stale(const RuleSite& s) { throw ReductionError("stale site: " + s.describe()); }

void assign_in_place(Formula& f, Literal z) {
  std::vector<ClauseId> sat(f.occurrences(z).begin(), f.occurrences(z).end());
  for (ClauseId id : sat) f.remove_clause(id);
  std::vector<ClauseId> shrink(f.occurrences(z.neg()).begin(), f.occurrences(z.neg()).end());
  for (ClauseId id : shrink)
    while (contains(f.clause(id), z.neg())) f.remove_literal(id, z.neg());
}

struct Resolution {
  std::vector<ClauseId> removed;
  std::vector<Clause> resolvents;
};

Resolution resolve_on(const Formula& f, Var v) {
  Literal x{v, true};
  Resolution r;
  std::set<ClauseId> both;
  for (ClauseId id : common(f.occurrences(x), f.occurrences(x.neg()))) both.insert(id);
  std::vector<ClauseId> pos, neg;
  for (ClauseId id : f.occurrences(x))
    if (!both.count(id)) pos.push_back(id);
  for (ClauseId id : f.occurrences(x.neg()))
    if (!both.count(id)) neg.push_back(id);
  std::set<ClauseId> all(f.occurrences(x).begin(), f.occurrences(x).end());
  all.insert(f.occurrences(x.neg()).begin(), f.occurrences(x.neg()).end());
  r.removed.assign(all.begin(), all.end());
  for (ClauseId p : pos) {
    Clause c = without(f.clause(p), x);
    for (ClauseId n : neg) {
      Clause d = without(f.clause(n), x.neg());
      Clause res = c;
      res.insert(res.end(), d.begin(), d.end());
      sort_clause(res);
      res.erase(std::unique(res.begin(), res.end()), res.end());
      if (!is_tautology(res)) r.resolvents.push_back(res);
    }
  }
  return r;
}

void resolve_in_place(Formula& f, Var v) {
  Resolution r = resolve_on(f, v);
  for (ClauseId id : r.removed) f.remove_clause(id);
  for (auto& c : r.resolvents) f.add_clause(c);
}

std::optional<RuleSite> find_r1(const Formula& f) {
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    for (std::size_t p = 1; p < c.size(); ++p)
      if (c[p] == c[p - 1]) return RuleSite{1, {id}, {c[p]}, 0};
  }
  return std::nullopt;
}

std::optional<RuleSite> find_r2(const Formula& f) {
  auto ids = f.clause_ids();
  for (ClauseId a : ids) {
    const Clause& c = f.clause(a);
    std::vector<ClauseId> cand;
    if (c.empty()) {
      cand = ids;
    } else {
      Literal rare = c[0];
      for (Literal l : c)
        if (f.occurrences(l).size() < f.occurrences(rare).size()) rare = l;
      cand.assign(f.occurrences(rare).begin(), f.occurrences(rare).end());
    }
    for (ClauseId b : cand) {
      if (b == a) continue;
      const Clause& d = f.clause(b);
      if (std::includes(d.begin(), d.end(), c.begin(), c.end())) return RuleSite{2, {a, b}, {}, 0};
    }
  }
  return std::nullopt;
}

std::optional<RuleSite> find_r3(const Formula& f) {
  for (ClauseId id : f.clause_ids())
    if (is_tautology(f.clause(id))) return RuleSite{3, {id}, {}, 0};
  return std::nullopt;
}

std::optional<RuleSite> find_r4(const Formula& f) {
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    if (c.size() == 1) return RuleSite{4, {id}, {c[0]}, 0};
    for (Literal l : c)
      if (f.count(l.neg()) == 0) return RuleSite{4, {id}, {l}, 0};
  }
  return std::nullopt;
}

std::optional<RuleSite> find_r5(const Formula& f) {
  for (Var v : f.variables())
    if (resolution_keeps_degrees(f, v)) return RuleSite{5, {}, {}, v};
  return std::nullopt;
}

std::vector<std::pair<Literal, Literal>> orientations(const Clause& c) { return {{c[0], c[1]}, {c[1], c[0]}}; }

std::optional<RuleSite> find_r6(const Formula& f) {
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    if (c.size() != 2) continue;
    for (auto [z1, z2] : orientations(c))
      for (ClauseId d : common(f.occurrences(z1), f.occurrences(z2.neg())))
        if (d != id) return RuleSite{6, {id, d}, {z1, z2}, 0};
  }
  return std::nullopt;
}

std::optional<RuleSite> find_r7(const Formula& f) {
  for (ClauseId a : f.clause_ids()) {
    const Clause& c = f.clause(a);
    for (std::size_t p = 0; p < c.size(); ++p)
      for (std::size_t q = 0; q < c.size(); ++q) {
        if (p == q) continue;
        Literal z1 = c[p], z2 = c[q];
        if (f.count(z2.neg()) != 1) continue;
        ClauseId b = *f.occurrences(z2.neg()).begin();
        if (b != a && contains(f.clause(b), z1)) return RuleSite{7, {a, b}, {z1, z2}, 0};
      }
  }
  return std::nullopt;
}

std::optional<RuleSite> find_r8(const Formula& f) {
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    if (c.size() != 2) continue;
    for (auto [z1, z2] : orientations(c)) {
      if (f.count(z1.neg()) != 1) continue;
      ClauseId b = *f.occurrences(z1.neg()).begin();
      if (contains(f.clause(b), z2.neg())) return RuleSite{8, {id, b}, {z1, z2}, 0};
    }
  }
  return std::nullopt;
}

bool has_two_clause(const Formula& f, Literal a, Literal b) {
  for (ClauseId id : common(f.occurrences(a), f.occurrences(b)))
    if (f.clause(id).size() == 2) return true;
  return false;
}

std::optional<RuleSite> find_r9(const Formula& f) {
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    if (c.size() != 2) continue;
    for (auto [z1, z2] : orientations(c))
      if (f.count(z1) == 1 || has_two_clause(f, z1.neg(), z2.neg())) return RuleSite{9, {id}, {z1, z2}, 0};
  }
  return std::nullopt;
}

Clause intersection(const Clause& a, const Clause& b) {
  Clause r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Clause difference(const Clause& a, const Clause& b) {
  Clause r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::optional<RuleSite> find_r10(const Formula& f) {
  for (ClauseId a : f.clause_ids()) {
    const Clause& c = f.clause(a);
    std::map<ClauseId, int> shared;
    for (Literal l : c)
      for (ClauseId b : f.occurrences(l))
        if (b > a) ++shared[b];
    for (auto [b, k] : shared) {
      if (k < 2) continue;
      Clause cc = intersection(c, f.clause(b));
      if (cc.size() >= 2 && cc.size() < c.size() && cc.size() < f.clause(b).size())
        return RuleSite{10, {a, b}, cc, 0};
    }
  }
  return std::nullopt;
}

}  // namespace

Formula dp_resolution(const Formula& f, Var v) {
  Formula g = f;
  resolve_in_place(g, v);
  return g.compacted();
}

bool resolution_keeps_degrees(const Formula& f, Var v) {
  if (f.degree(v) == 0) return false;
  Resolution r = resolve_on(f, v);
  std::map<Var, int> change;
  for (ClauseId id : r.removed)
    for (Literal l : f.clause(id)) --change[l.var];
  for (const auto& c : r.resolvents)
    for (Literal l : c) ++change[l.var];
  for (auto [u, d] : change)
    if (u != v && d > 0) return false;
  return true;
}

std::optional<RuleSite> find_rule(const Formula& f, int rule) {
  switch (rule) {
    case 1: return find_r1(f);
    case 2: return find_r2(f);
    case 3: return find_r3(f);
    case 4: return find_r4(f);
    case 5: return find_r5(f);
    case 6: return find_r6(f);
    case 7: return find_r7(f);
    case 8: return find_r8(f);
    case 9: return find_r9(f);
    case 10: return find_r10(f);
    default: throw std::invalid_argument("no reduction rule " + std::to_string(rule));
  }
}

std::optional<RuleSite> find_applicable_rule(const Formula& f) {
  for (int r = 1; r <= 10; ++r)
    if (auto s = find_rule(f, r)) return s;
  return std::nullopt;
}

bool is_reduced(const Formula& f) { return !find_applicable_rule(f).has_value(); }

void apply_rule_in_place(Formula& f, const RuleSite& s) {
  auto live = [&](std::size_t k) {
    if (s.clauses.size() <= k || !f.alive(s.clauses[k])) stale(s);
    return s.clauses[k];
  };
  switch (s.rule) {
    case 1: {
      ClauseId id = live(0);
      if (s.literals.empty() || std::count(f.clause(id).begin(), f.clause(id).end(), s.literals[0]) < 2) stale(s);
      f.remove_literal(id, s.literals[0]);
      break;
    }
    case 2: {
      ClauseId a = live(0), b = live(1);
      const Clause &c = f.clause(a), &d = f.clause(b);
      if (a == b || !std::includes(d.begin(), d.end(), c.begin(), c.end())) stale(s);
      f.remove_clause(b);
      break;
    }
    case 3: {
      ClauseId id = live(0);
      if (!is_tautology(f.clause(id))) stale(s);
      f.remove_clause(id);
      break;
    }
    case 4: {
      ClauseId id = live(0);
      if (s.literals.empty()) stale(s);
      Literal l = s.literals[0];
      const Clause& c = f.clause(id);
      if (!contains(c, l) || !(c.size() == 1 || f.count(l.neg()) == 0)) stale(s);
      assign_in_place(f, l);
      break;
    }
    case 5: {
      if (!resolution_keeps_degrees(f, s.var)) stale(s);
      resolve_in_place(f, s.var);
      break;
    }
    case 6: {
      ClauseId a = live(0), d = live(1);
      Literal z1 = s.literals.at(0), z2 = s.literals.at(1);
      const Clause& c = f.clause(a);
      if (a == d || c.size() != 2 || !contains(c, z1) || !contains(c, z2)) stale(s);
      if (!contains(f.clause(d), z1) || !contains(f.clause(d), z2.neg())) stale(s);
      f.remove_literal(d, z2.neg());
      break;
    }
    case 7: {
      ClauseId a = live(0), b = live(1);
      Literal z1 = s.literals.at(0), z2 = s.literals.at(1);
      if (a == b || !contains(f.clause(a), z1) || !contains(f.clause(a), z2)) stale(s);
      if (f.count(z2.neg()) != 1 || !contains(f.clause(b), z2.neg()) || !contains(f.clause(b), z1)) stale(s);
      f.remove_literal(a, z1);
      break;
    }
    case 8: {
      ClauseId a = live(0), b = live(1);
      Literal z1 = s.literals.at(0), z2 = s.literals.at(1);
      const Clause& c = f.clause(a);
      if (c.size() != 2 || !contains(c, z1) || !contains(c, z2)) stale(s);
      if (f.count(z1.neg()) != 1 || !contains(f.clause(b), z1.neg()) || !contains(f.clause(b), z2.neg())) stale(s);
      f.remove_clause(a);
      break;
    }
    case 9: {
      ClauseId a = live(0);
      Literal z1 = s.literals.at(0), z2 = s.literals.at(1);
      const Clause& c = f.clause(a);
      if (c.size() != 2 || !contains(c, z1) || !contains(c, z2) || z1.var == z2.var) stale(s);
      if (!(f.count(z1) == 1 || has_two_clause(f, z1.neg(), z2.neg()))) stale(s);
      std::set<ClauseId> touched(f.occurrences(z1).begin(), f.occurrences(z1).end());
      touched.insert(f.occurrences(z1.neg()).begin(), f.occurrences(z1.neg()).end());
      for (ClauseId id : touched) {
        Clause nc;
        for (Literal l : f.clause(id)) {
          if (l == z1)
            nc.push_back(z2.neg());
          else if (l == z1.neg())
            nc.push_back(z2);
          else
            nc.push_back(l);
        }
        f.replace_clause(id, nc);
      }
      for (ClauseId id : f.clause_ids())
        if (is_tautology(f.clause(id))) f.remove_clause(id);
      break;
    }
    case 10: {
      ClauseId a = live(0), b = live(1);
      const Clause ca = f.clause(a), cb = f.clause(b);
      Clause cc = intersection(ca, cb);
      if (a == b || cc != s.literals || cc.size() < 2) stale(s);
      Clause d1 = difference(ca, cc), d2 = difference(cb, cc);
      if (d1.empty() || d2.empty()) stale(s);
      Literal x{f.take_fresh_variable(), true};
      f.remove_clause(a);
      f.remove_clause(b);
      Clause xc = cc;
      xc.push_back(x);
      d1.push_back(x.neg());
      d2.push_back(x.neg());
      f.add_clause(xc);
      f.add_clause(d1);
      f.add_clause(d2);
      break;
    }
    default: throw ReductionError("unknown rule in site: " + s.describe());
  }
}

Formula apply_rule(const Formula& f, const RuleSite& site) {
  Formula g = f;
  apply_rule_in_place(g, site);
  return g.compacted();
}

ReductionOutcome reduce(const Formula& f, const WeightTable& w) {
  ReductionOutcome out;
  Formula g = f;
  const double eps = w.epsilon();
  auto potential = [&](long L, double m) { return static_cast<double>(L) + 2.0 * m / eps; };
  long L = g.length();
  double m = mu(g, w);
  out.potential_trace.push_back(potential(L, m));
  while (auto site = find_applicable_rule(g)) {
    // dropping a repeated empty clause leaves both L and mu unchanged
    bool exempt = site->rule == 2 && g.clause(site->clauses[1]).empty();
    apply_rule_in_place(g, *site);
    RuleApplication app{site->rule, site->describe(), L, g.length(), m, mu(g, w)};
    out.applied.push_back(app);
    double before = out.potential_trace.back();
    double after = potential(app.L_after, app.mu_after);
    out.potential_trace.push_back(after);
    if (!exempt && !(after < before - 1e-9)) {
      std::ostringstream os;
      os << "potential did not decrease at " << site->describe() << ": " << before << " -> " << after;
      throw ReductionError(os.str());
    }
    L = app.L_after;
    m = app.mu_after;
  }
  out.formula = g.compacted();
  return out;
}

std::vector<std::string> reduced_structure_violations(const Formula& f) {
  std::vector<std::string> bad;
  auto other_with = [&](ClauseId self, Literal a, Literal b) {
    for (ClauseId id : common(f.occurrences(a), f.occurrences(b)))
      if (id != self) return id;
    return -1;
  };
  for (Var v : f.variables())
    if (f.degree(v) < 3) bad.push_back("min-degree: variable " + std::to_string(v) + " has degree " + std::to_string(f.degree(v)));
  for (ClauseId id : f.clause_ids()) {
    const Clause& c = f.clause(id);
    if (c.size() == 2) {
      Literal x = c[0], y = c[1];
      for (auto [a, b] : std::vector<std::pair<Literal, Literal>>{{x, y}, {x.neg(), y}, {x, y.neg()}}) {
        ClauseId o = other_with(id, a, b);
        if (o >= 0) bad.push_back("two-clause: " + to_string(c) + " and " + to_string(f.clause(o)));
      }
    }
    for (std::size_t p = 0; p < c.size(); ++p)
      for (std::size_t q = 0; q < c.size(); ++q) {
        if (p == q) continue;
        Literal x = c[p], y = c[q];
        ClauseId o = other_with(id, x, y);
        if (p < q && o >= 0) bad.push_back("shared-pair: " + to_string(c) + " and " + to_string(f.clause(o)));
        if (f.degree(x.var) == 3) {
          for (Literal yy : {y, y.neg()}) {
            ClauseId o2 = other_with(id, x.neg(), yy);
            if (o2 >= 0) bad.push_back("degree-3 pair: " + to_string(c) + " and " + to_string(f.clause(o2)));
          }
        }
      }
  }
  for (Var v : f.variables())
    for (Literal x : {Literal{v, true}, Literal{v, false}}) {
      if (f.count(x) != 1 || f.count(x.neg()) < 2) continue;
      const Clause& xc = f.clause(*f.occurrences(x).begin());
      Clause rest = without(xc, x);
      if (rest.size() < 2) bad.push_back("unique-clause: " + to_string(xc) + " is shorter than 3");
      for (ClauseId id : f.occurrences(x.neg())) {
        const Clause& d = f.clause(id);
        if (d.size() != 2) continue;
        Literal y = d[0] == x.neg() ? d[1] : d[0];
        for (Literal r : rest)
          if (r.var == y.var) bad.push_back("unique-clause: " + to_string(xc) + " meets " + to_string(d));
      }
    }
  return bad;
}

}  // namespace mcsat
