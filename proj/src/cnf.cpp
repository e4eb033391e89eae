#include "mcsat/cnf.hpp"

#include <algorithm>
#include <sstream>

namespace mcsat {

std::string to_string(Literal l) { return std::to_string(l.to_dimacs()); }

void sort_clause(Clause& c) { std::sort(c.begin(), c.end()); }

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i].var == c[j].var && c[i].positive != c[j].positive) return true;
  return false;
}

std::string to_string(const Clause& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i].to_dimacs();
  os << ')';
  return os.str();
}

Formula::Formula(const std::vector<Clause>& clauses, Var next_fresh) {
  for (const auto& c : clauses) add_clause(c);
  if (next_fresh > next_fresh_) next_fresh_ = next_fresh;
}

void Formula::ensure_var(Var v) {
  if (v <= 0) throw std::invalid_argument("variable ids must be positive");
  std::size_t need = 2 * static_cast<std::size_t>(v) + 2;
  if (occ_.size() < need) {
    occ_.resize(need);
    count_.resize(need, 0);
  }
  if (v >= next_fresh_) next_fresh_ = v + 1;
}

void Formula::index_add(ClauseId id, Literal l) {
  ensure_var(l.var);
  occ_[l.code()].insert(id);
  ++count_[l.code()];
  ++length_;
}

void Formula::index_remove(ClauseId id, Literal l) {
  --count_[l.code()];
  --length_;
  const Clause& c = clauses_[id];
  if (std::find(c.begin(), c.end(), l) == c.end()) occ_[l.code()].erase(id);
}

ClauseId Formula::add_clause(Clause c) {
  sort_clause(c);
  ClauseId id = static_cast<ClauseId>(clauses_.size());
  clauses_.push_back(c);
  alive_.push_back(1);
  ++num_alive_;
  if (c.empty()) ++empty_clauses_;
  for (Literal l : c) index_add(id, l);
  return id;
}

void Formula::remove_clause(ClauseId id) {
  if (!alive(id)) throw std::logic_error("remove_clause: dead clause id " + std::to_string(id));
  Clause c = std::move(clauses_[id]);
  clauses_[id].clear();
  for (Literal l : c) {
    --count_[l.code()];
    --length_;
    occ_[l.code()].erase(id);
  }
  if (c.empty()) --empty_clauses_;
  alive_[id] = 0;
  --num_alive_;
}

void Formula::remove_literal(ClauseId id, Literal l) {
  if (!alive(id)) throw std::logic_error("remove_literal: dead clause id " + std::to_string(id));
  Clause& c = clauses_[id];
  auto it = std::find(c.begin(), c.end(), l);
  if (it == c.end()) throw std::logic_error("remove_literal: literal not in clause");
  c.erase(it);
  index_remove(id, l);
  if (c.empty()) ++empty_clauses_;
}

void Formula::replace_clause(ClauseId id, Clause c) {
  if (!alive(id)) throw std::logic_error("replace_clause: dead clause id " + std::to_string(id));
  for (Literal l : clauses_[id]) {
    --count_[l.code()];
    --length_;
    occ_[l.code()].erase(id);
  }
  if (clauses_[id].empty()) --empty_clauses_;
  sort_clause(c);
  clauses_[id] = c;
  if (c.empty()) ++empty_clauses_;
  for (Literal l : c) index_add(id, l);
}

std::vector<ClauseId> Formula::clause_ids() const {
  std::vector<ClauseId> ids;
  ids.reserve(num_alive_);
  for (ClauseId i = 0; i < id_bound(); ++i)
    if (alive_[i]) ids.push_back(i);
  return ids;
}

std::vector<Clause> Formula::clause_list() const {
  std::vector<Clause> out;
  out.reserve(num_alive_);
  for (ClauseId i = 0; i < id_bound(); ++i)
    if (alive_[i]) out.push_back(clauses_[i]);
  return out;
}

const std::set<ClauseId>& Formula::occurrences(Literal l) const {
  static const std::set<ClauseId> none;
  if (l.var <= 0 || l.code() >= occ_.size()) return none;
  return occ_[l.code()];
}

int Formula::count(Literal l) const {
  if (l.var <= 0 || l.code() >= count_.size()) return 0;
  return count_[l.code()];
}

std::vector<Var> Formula::variables() const {
  std::vector<Var> vs;
  for (Var v = 1; 2 * static_cast<std::size_t>(v) + 1 < count_.size(); ++v)
    if (degree(v) > 0) vs.push_back(v);
  return vs;
}

Var Formula::max_variable() const {
  for (Var v = static_cast<Var>(count_.size() / 2) - 1; v >= 1; --v)
    if (degree(v) > 0) return v;
  return 0;
}

Var Formula::next_fresh_variable() const { return next_fresh_; }

Var Formula::take_fresh_variable() { return next_fresh_++; }

void Formula::verify_index() const {
  std::vector<std::set<ClauseId>> occ(occ_.size());
  std::vector<int> cnt(count_.size(), 0);
  long len = 0;
  int alive_count = 0, empties = 0;
  for (ClauseId i = 0; i < id_bound(); ++i) {
    if (!alive_[i]) {
      if (!clauses_[i].empty()) throw StructuralError("dead clause keeps literals");
      continue;
    }
    ++alive_count;
    if (clauses_[i].empty()) ++empties;
    if (!std::is_sorted(clauses_[i].begin(), clauses_[i].end()))
      throw StructuralError("clause " + std::to_string(i) + " is not sorted");
    for (Literal l : clauses_[i]) {
      if (l.code() >= occ.size()) throw StructuralError("literal outside index range");
      occ[l.code()].insert(i);
      ++cnt[l.code()];
      ++len;
    }
  }
  if (occ != occ_ || cnt != count_ || len != length_ || alive_count != num_alive_ || empties != empty_clauses_)
    throw StructuralError("occurrence index out of sync with clauses");
}

Formula Formula::compacted() const {
  Formula g(clause_list(), next_fresh_);
  return g;
}

bool same_clauses(const Formula& a, const Formula& b) {
  auto x = a.clause_list();
  auto y = b.clause_list();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

int degree(const Formula& f, Var v) { return f.degree(v); }

std::pair<int, int> literal_profile(const Formula& f, Literal l) { return {f.count(l), f.count(l.neg())}; }

NeighborStats neighbor_stats(const Formula& f, Literal l) {
  NeighborStats s;
  std::set<Literal> seen;
  for (ClauseId id : f.occurrences(l)) {
    const Clause& c = f.clause(id);
    if (std::count(c.begin(), c.end(), l) > 1)
      throw StructuralError("clause " + to_string(c) + " contains literal " + to_string(l) + " twice");
    for (Literal y : c) {
      if (y == l) continue;
      if (!seen.insert(y).second)
        throw StructuralError("neighbor " + to_string(y) + " of " + to_string(l) + " repeats");
      int d = f.degree(y.var);
      ++s.n[d];
      if (c.size() == 2)
        ++s.n2[d];
      else
        ++s.n3plus[d];
    }
  }
  for (Literal y : seen) {
    if (!y.positive && seen.count(y.neg())) continue;  // counted with the positive literal
    int d = f.degree(y.var);
    if (seen.count(y.neg()))
      ++s.t2[d];
    else
      ++s.t1[d];
  }
  return s;
}

Formula assign(const Formula& f, const std::vector<Literal>& s) {
  std::set<Literal> lits(s.begin(), s.end());
  for (Literal z : lits)
    if (lits.count(z.neg())) throw ContradictionError("assignment sets both " + to_string(z) + " and its negation");
  Formula g = f;
  for (Literal z : lits) {
    std::vector<ClauseId> sat(g.occurrences(z).begin(), g.occurrences(z).end());
    for (ClauseId id : sat) g.remove_clause(id);
    std::vector<ClauseId> shrink(g.occurrences(z.neg()).begin(), g.occurrences(z.neg()).end());
    for (ClauseId id : shrink)
      while (g.alive(id) && std::count(g.clause(id).begin(), g.clause(id).end(), z.neg()))
        g.remove_literal(id, z.neg());
  }
  return g.compacted();
}

IncidenceGraph incidence_graph(const Formula& f, Literal x) {
  if (f.count(x) != 2 || f.count(x.neg()) != 3)
    throw std::invalid_argument("incidence_graph: " + to_string(x) + " is not a (2,3)-literal");
  IncidenceGraph g;
  g.x_side.assign(f.occurrences(x).begin(), f.occurrences(x).end());
  g.y_side.assign(f.occurrences(x.neg()).begin(), f.occurrences(x.neg()).end());
  auto vars_of = [&](ClauseId id) {
    std::set<Var> vs;
    for (Literal l : f.clause(id))
      if (l.var != x.var) vs.insert(l.var);
    return vs;
  };
  for (std::size_t i = 0; i < g.x_side.size(); ++i) {
    auto a = vars_of(g.x_side[i]);
    for (std::size_t j = 0; j < g.y_side.size(); ++j) {
      auto b = vars_of(g.y_side[j]);
      bool shared = std::any_of(a.begin(), a.end(), [&](Var v) { return b.count(v) > 0; });
      if (shared) g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

bool has_matching_size_2(const IncidenceGraph& g) {
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j)
      if (g.edges[i].first != g.edges[j].first && g.edges[i].second != g.edges[j].second) return true;
  return false;
}

std::vector<int> vertex_degrees(const IncidenceGraph& g) {
  std::vector<int> deg(g.x_side.size() + g.y_side.size(), 0);
  for (auto [i, j] : g.edges) {
    ++deg[i];
    ++deg[g.x_side.size() + j];
  }
  return deg;
}

std::vector<ClauseId> degree_zero_vertices(const IncidenceGraph& g) {
  auto deg = vertex_degrees(g);
  std::vector<ClauseId> out;
  for (std::size_t k = 0; k < deg.size(); ++k) {
    if (deg[k] != 0) continue;
    out.push_back(k < g.x_side.size() ? g.x_side[k] : g.y_side[k - g.x_side.size()]);
  }
  return out;
}

}  // namespace mcsat
