// Weights, the measure mu, branching factors and the per-step vector catalog.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcsat/cnf.hpp"

namespace mcsat {

class InvalidWeights : public std::invalid_argument {
 public:
  InvalidWeights(const std::string& msg, std::vector<std::string> violated)
      : std::invalid_argument(msg), violated_(std::move(violated)) {}
  const std::vector<std::string>& violated() const { return violated_; }

 private:
  std::vector<std::string> violated_;
};

// Names of the weight assumptions broken by (w3, sigma); empty when feasible.
//   "w3>=delta5", "delta>=1", "delta_nonincreasing", "w3-delta5<1",
//   "0<w3<2", "2*delta5>w3", "sigma>=0"
std::vector<std::string> weight_assumption_violations(double w3, double sigma);

class WeightTable {
 public:
  // throws InvalidWeights
  WeightTable(double w3, double sigma);
  static WeightTable reference();  // w3 = 1.94719, sigma = 0.86108

  double w3() const { return w3_; }
  double sigma() const { return sigma_; }
  double w(int degree) const;
  double delta(int i) const { return w(i) - w(i - 1); }
  double epsilon() const { return 2.0 - w3_; }

 private:
  double w3_;
  double sigma_;
};

double mu(const Formula& f, const WeightTable& w);

// Largest root of 1 - sum x^{-a_i}. Throws on an empty vector or non-positive entry.
double branching_factor(const std::vector<double>& a);
bool covers(const std::vector<double>& a, const std::vector<double>& b);

struct CatalogEntry {
  std::string label;           // "3".."16", with "11a"/"11b", "12a"/"12b", "6-unshifted"
  int step = 0;
  std::vector<double> vector;  // empty for scalar rows
  double factor = 0.0;
  double reference = 0.0;      // rounded published factor, 0 when none
};

std::vector<CatalogEntry> catalog(const WeightTable& w);

// Runtime audit bounds: smallest child decrease and sum of both decreases.
struct AuditBound {
  double min = 0.0;
  double sum = 0.0;
};
std::optional<AuditBound> audit_bound(int step, const WeightTable& w);

struct OptimizeResult {
  double w3 = 0.0;
  double sigma = 0.0;
  double alpha = 0.0;
  double sigma_lo = 0.0;  // interval of sigma values attaining alpha at w3
  double sigma_hi = 0.0;
};

// Minimizes the largest catalog factor over w3 in [5/3, 2) and sigma >= 0.
// With sigma_fixed set only w3 is searched.
OptimizeResult optimize_weights(double grid_step = 1e-4, std::optional<double> sigma_fixed = std::nullopt);

// Largest factor over the catalog rows that enter the optimization.
double max_factor(double w3, double sigma);

}  // namespace mcsat
