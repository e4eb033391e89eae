// The ten reduction rules, applied lowest number first until none fits.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcsat/cnf.hpp"
#include "mcsat/measure.hpp"

namespace mcsat {

class ReductionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RuleSite {
  int rule = 0;
  std::vector<ClauseId> clauses;
  std::vector<Literal> literals;  // rule-specific: z1, z2, the forced literal, ...
  Var var = 0;                    // R5

  std::string describe() const;
};

struct RuleApplication {
  int rule = 0;
  std::string site;
  long L_before = 0;
  long L_after = 0;
  double mu_before = 0.0;
  double mu_after = 0.0;
};

struct ReductionOutcome {
  Formula formula;
  std::vector<RuleApplication> applied;
  std::vector<double> potential_trace;  // M = L + 2 mu / (2 - w3), one value per formula state
};

Formula dp_resolution(const Formula& f, Var v);

// R5 test: every degree in DP_v(f) is at most its degree in f
bool resolution_keeps_degrees(const Formula& f, Var v);

std::optional<RuleSite> find_applicable_rule(const Formula& f);
std::optional<RuleSite> find_rule(const Formula& f, int rule);

// One rule application. Throws ReductionError when the site no longer matches.
Formula apply_rule(const Formula& f, const RuleSite& site);
void apply_rule_in_place(Formula& f, const RuleSite& site);

ReductionOutcome reduce(const Formula& f, const WeightTable& w);
bool is_reduced(const Formula& f);

// Properties every reduced formula has; returns one message per violation.
std::vector<std::string> reduced_structure_violations(const Formula& f);

}  // namespace mcsat
