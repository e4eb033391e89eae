// Formula representation: literals, clauses, occurrence index and the
// structural queries used by the reduction rules and the branching steps.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcsat {

using Var = int;
using ClauseId = int;

struct Literal {
  Var var = 0;
  bool positive = true;

  Literal neg() const { return Literal{var, !positive}; }
  int to_dimacs() const { return positive ? var : -var; }
  static Literal from_dimacs(int x) { return Literal{x < 0 ? -x : x, x > 0}; }
  // dense index: 2*var for x, 2*var+1 for its negation
  std::size_t code() const { return 2 * static_cast<std::size_t>(var) + (positive ? 0 : 1); }

  bool operator==(const Literal&) const = default;
  // sorted by variable, positive literal first
  bool operator<(const Literal& o) const {
    if (var != o.var) return var < o.var;
    return positive && !o.positive;
  }
};

std::string to_string(Literal l);

using Clause = std::vector<Literal>;

void sort_clause(Clause& c);
bool is_tautology(const Clause& c);
std::string to_string(const Clause& c);

class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContradictionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Formula {
 public:
  Formula() = default;
  explicit Formula(const std::vector<Clause>& clauses, Var next_fresh = 0);

  // ids are stable until compacted(); removed ids stay dead
  ClauseId add_clause(Clause c);
  void remove_clause(ClauseId id);
  // removes one occurrence of l from the clause
  void remove_literal(ClauseId id, Literal l);
  void replace_clause(ClauseId id, Clause c);

  bool alive(ClauseId id) const { return id >= 0 && id < static_cast<int>(alive_.size()) && alive_[id]; }
  const Clause& clause(ClauseId id) const { return clauses_.at(id); }
  std::vector<ClauseId> clause_ids() const;
  std::vector<Clause> clause_list() const;
  int num_clauses() const { return num_alive_; }
  int id_bound() const { return static_cast<int>(clauses_.size()); }

  // clause ids containing l, ascending; a clause holding l twice is listed once
  const std::set<ClauseId>& occurrences(Literal l) const;
  // occurrence count including duplicates inside one clause
  int count(Literal l) const;
  int degree(Var v) const { return count(Literal{v, true}) + count(Literal{v, false}); }

  std::vector<Var> variables() const;
  Var max_variable() const;
  long length() const { return length_; }
  bool empty() const { return num_alive_ == 0; }
  bool has_empty_clause() const { return empty_clauses_ > 0; }

  Var next_fresh_variable() const;
  Var take_fresh_variable();

  // throws StructuralError when the index disagrees with a full rebuild
  void verify_index() const;
  Formula compacted() const;

 private:
  void index_add(ClauseId id, Literal l);
  void index_remove(ClauseId id, Literal l);
  void ensure_var(Var v);

  std::vector<Clause> clauses_;
  std::vector<char> alive_;
  std::vector<std::set<ClauseId>> occ_;
  std::vector<int> count_;
  int num_alive_ = 0;
  int empty_clauses_ = 0;
  long length_ = 0;
  Var next_fresh_ = 1;
};

// clause multiset equality, ignoring ids
bool same_clauses(const Formula& a, const Formula& b);

int degree(const Formula& f, Var v);
std::pair<int, int> literal_profile(const Formula& f, Literal l);

struct NeighborStats {
  std::map<int, int> n;
  std::map<int, int> n2;
  std::map<int, int> n3plus;
  std::map<int, int> t1;
  std::map<int, int> t2;

  int get(const std::map<int, int>& m, int i) const {
    auto it = m.find(i);
    return it == m.end() ? 0 : it->second;
  }
};

NeighborStats neighbor_stats(const Formula& f, Literal l);

// F_{S=1}
Formula assign(const Formula& f, const std::vector<Literal>& s);

struct IncidenceGraph {
  std::vector<ClauseId> x_side;
  std::vector<ClauseId> y_side;
  std::vector<std::pair<int, int>> edges;  // (x_side index, y_side index)
};

IncidenceGraph incidence_graph(const Formula& f, Literal x);
bool has_matching_size_2(const IncidenceGraph& g);
std::vector<ClauseId> degree_zero_vertices(const IncidenceGraph& g);
// x_side vertices first, then y_side
std::vector<int> vertex_degrees(const IncidenceGraph& g);

}  // namespace mcsat
