// The branch-and-reduce recursion with an optional per-node audit.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcsat/cnf.hpp"
#include "mcsat/measure.hpp"
#include "mcsat/reductions.hpp"

namespace mcsat {

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class SatResult { Sat, Unsat, BudgetExceeded };
std::string to_string(SatResult r);

struct BranchDecision {
  int step = 0;  // 3..16
  std::optional<Literal> pivot;
  std::vector<std::vector<Literal>> branch_sets;  // empty for 13 and 16
  // steps 9/10: the (2,3)-literal whose clauses matched the pattern
  std::optional<Literal> anchor;
};

// f must be reduced, nonempty and free of empty clauses
BranchDecision select_step(const Formula& f);

// Splits f into the clauses on 5-variables and the rest; throws InternalError
// when the parts share a variable or the first part has a clause longer than 3.
std::pair<Formula, Formula> check_step13_split(const Formula& f);

struct AuditFailure {
  long node_id = 0;
  int step = 0;
  std::string kind;  // bound-min, bound-sum, extra-decrease, matching, degree-zero,
                     // shift, structure, stats, index, step10-resolution
  std::string detail;
};

struct NodeAudit {
  long node_id = 0;
  long parent_id = -1;
  int step = 0;  // 0 = leaf after reduction, 13/16 = handed to the subsolver
  std::optional<Literal> pivot;
  double mu = 0.0;
  std::vector<double> delta_children;
  std::optional<AuditBound> bound;
  bool shift_case = false;
  bool shift_discharged = false;
  std::vector<RuleApplication> rule_applications;
};

struct SolveOptions {
  WeightTable weights = WeightTable::reference();
  bool audit = false;
  long node_budget = 10'000'000;
  std::function<void(const NodeAudit&)> on_node;  // called once per node in audit mode
  bool full_tree = false;  // keep visiting children after a satisfiable one
};

struct SolveStats {
  std::map<int, long> step_hits;
  long nodes = 0;
  long fallback_nodes = 0;
  long shift_cases = 0;
  long shift_discharged = 0;
  long matching_checks = 0;
  long extra_decrease_checks = 0;
  long bound_checks = 0;
};

struct SolveReport {
  SatResult result = SatResult::Unsat;
  std::vector<AuditFailure> failures;
  SolveStats stats;
};

SolveReport solve(const Formula& f, const SolveOptions& opt = {});

// Plain reduce-and-branch search on a maximum-degree variable.
SatResult fallback_subsolver(const Formula& f, const WeightTable& w, long node_budget = 10'000'000);

// Checks run at one branching node; exposed for tests.
struct NodeCheck {
  std::vector<double> deltas;
  std::optional<AuditBound> bound;
  bool shift_case = false;
  bool shift_discharged = false;
  std::vector<std::pair<std::string, std::string>> failures;  // (kind, detail)
};

NodeCheck audit_node(const Formula& parent, const BranchDecision& d, const std::vector<Formula>& children_assigned,
                     const std::vector<ReductionOutcome>& children_reduced, const WeightTable& w);

// Whether some 2-clause of f has both variables of degree 5.
bool has_two_clause_of_5_variables(const Formula& f);

}  // namespace mcsat
