// Random formula generation, the brute-force oracle and the seeded corpus.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcsat/cnf.hpp"
#include "mcsat/solver.hpp"

namespace mcsat {

struct GeneratorConfig {
  int num_vars = 10;
  int num_clauses = 30;
  int len_min = 1;
  int len_max = 5;
  std::optional<int> degree_cap;
  std::uint64_t seed = 1;
  double tautology_rate = 0.0;  // per clause: replace one literal by the negation of another
  double duplicate_rate = 0.0;  // per clause: replace one literal by a copy of another
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Deterministic in cfg. Clauses with a cap may come out shorter or fewer once
// the remaining capacity runs out.
Formula generate(const GeneratorConfig& cfg);

// Configuration model: each variable gets an exact degree (3, 4 or 5) with
// balanced signs, and the occurrence slots are dealt into clauses of length
// len_min..len_max with no variable twice in a clause. Such formulas survive
// reduction far better than uniform ones.
struct ProfileConfig {
  int num_vars = 30;
  double share3 = 0.1;
  double share4 = 0.1;  // the rest get degree 5
  int len_min = 3;
  int len_max = 4;
  bool no_shared_pairs = true;  // no two clauses share two literals
  std::uint64_t seed = 1;
};

Formula generate_profiled(const ProfileConfig& cfg);

constexpr int kOracleMaxVars = 24;

class OracleRefusal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive evaluation; refuses formulas with more than kOracleMaxVars variables.
bool oracle(const Formula& f);

// Seed from MC_SAT_SEED when set, else fallback.
std::uint64_t default_seed(std::uint64_t fallback = 20240501);

// Config of corpus member i: cycles through plain random, degree-capped and
// near-regular (degree about 5) families.
GeneratorConfig corpus_config(std::uint64_t base_seed, int index, int max_vars);

struct FuzzMismatch {
  std::uint64_t seed = 0;
  std::string dimacs;
  bool oracle_sat = false;
  SatResult solver = SatResult::Unsat;
};

struct FuzzReport {
  int count = 0;
  std::vector<FuzzMismatch> mismatches;
  std::vector<std::string> errors;  // exceptions raised while solving
};

FuzzReport fuzz(int count, int max_vars, std::uint64_t base_seed);

}  // namespace mcsat
