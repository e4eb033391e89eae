// Acceptance run: one PASS/FAIL line per criterion, plus coverage counts.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "mcsat/harness.hpp"
#include "mcsat/measure.hpp"
#include "mcsat/reductions.hpp"
#include "mcsat/solver.hpp"
#include "support/oracles.hpp"

using namespace mcsat;

namespace {

int failed = 0;

void report(int k, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", k, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<oracles::RawClause> raw(const Formula& f) {
  std::vector<oracles::RawClause> out;
  for (const auto& c : f.clause_list()) {
    oracles::RawClause r;
    for (Literal l : c) r.push_back(l.to_dimacs());
    out.push_back(r);
  }
  return out;
}

std::string num(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

const std::map<int, std::vector<std::string>> kStepRows = {
    {3, {"3"}},   {4, {"4"}},   {5, {"5"}},   {6, {"6"}},          {7, {"7"}},   {8, {"8"}},   {9, {"9"}},
    {10, {"10"}}, {11, {"11a", "11b"}}, {12, {"12a", "12b"}}, {13, {"13"}}, {14, {"14"}}, {15, {"15"}}, {16, {"16"}},
};

// Published factors, rounded to four places.
const std::map<std::string, double> kTable = {
    {"3", 1.0636},  {"4", 1.0620},   {"5", 1.0624},   {"6", 1.0633},   {"7", 1.0638},   {"8", 1.0636},
    {"9", 1.0629},  {"10", 1.0584},  {"11a", 1.0629}, {"11b", 1.0629}, {"12a", 1.0636}, {"12b", 1.0635},
    {"13", 1.0584}, {"14", 1.0638},  {"15", 1.0638},  {"16", 1.0638},
};

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  auto cat = catalog(WeightTable(1.94719, 0.86108));
  std::map<std::string, const CatalogEntry*> by;
  for (const auto& e : cat) by[e.label] = &e;
  int rows = 0, bad = 0;
  double worst = 0;
  for (const auto& [step, labels] : kStepRows) {
    ++rows;
    for (const auto& l : labels) {
      auto it = by.find(l);
      if (it == by.end()) {
        ++bad;
        continue;
      }
      // vectors go through an independent root finder; scalar rows are taken as computed
      double f = it->second->vector.empty() ? it->second->factor : oracles::tau(it->second->vector);
      double d = std::abs(f - kTable.at(l));
      worst = std::max(worst, d);
      if (d > 1e-4 || std::abs(f - it->second->factor) > 1e-9) ++bad;
    }
  }
  double t = seconds_since(t0);
  report(1, bad == 0 && rows == 14 && t < 1.0,
         std::to_string(rows) + " step rows, " + std::to_string(bad) + " off by more than 1e-4, worst " +
             num(worst, 7) + ", " + num(t, 3) + " s");
}

OptimizeResult opt;

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  opt = optimize_weights(1e-4);
  double t = seconds_since(t0);
  bool ok = std::abs(opt.alpha - 1.0638) <= 1e-3 && std::abs(opt.w3 - 1.94719) <= 1e-2 &&
            std::abs(opt.sigma - 0.86108) <= 2e-2 && t < 60;
  report(2, ok, "alpha " + num(opt.alpha) + ", w3 " + num(opt.w3) + ", sigma " + num(opt.sigma) + " in [" +
                    num(opt.sigma_lo, 4) + ", " + num(opt.sigma_hi, 4) + "], " + num(t, 2) + " s");
}

constexpr int kCorpus = 10000;
constexpr int kMaxVars = 12;

void criteria3and4(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  const WeightTable w = WeightTable::reference();
  const double eps = w.epsilon();
  int mismatch = 0, errors = 0;
  long mu_up = 0, sat_changed = 0, structure = 0, potential = 0, exempt = 0, applications = 0;
  for (int i = 0; i < kCorpus; ++i) {
    Formula f = generate(corpus_config(seed, i, kMaxVars));
    auto rf = raw(f);
    bool truth = oracles::brute_force_sat(rf);
    try {
      if (solve(f).result != (truth ? SatResult::Sat : SatResult::Unsat)) {
        ++mismatch;
        std::printf("  mismatch at corpus index %d\n", i);
      }
    } catch (const std::exception& e) {
      ++errors;
      std::printf("  solver error at corpus index %d: %s\n", i, e.what());
    }
    try {
      auto out = reduce(f, w);
      auto rr = raw(out.formula);
      if (oracles::measure(rr, w.w3()) > oracles::measure(rf, w.w3()) + 1e-9) ++mu_up;
      if (oracles::brute_force_sat(rr) != truth) ++sat_changed;
      structure += static_cast<long>(reduced_structure_violations(out.formula).size());
      for (const auto& a : out.applied) {
        ++applications;
        double before = a.L_before + 2 * a.mu_before / eps, after = a.L_after + 2 * a.mu_after / eps;
        if (after < before - 1e-9) continue;
        // deleting a second empty clause leaves L and mu unchanged
        if (a.rule == 2 && a.L_before == a.L_after && a.mu_before == a.mu_after) {
          ++exempt;
          continue;
        }
        ++potential;
      }
    } catch (const ReductionError& e) {
      ++potential;
      std::printf("  reduction error at corpus index %d: %s\n", i, e.what());
    }
  }
  double t = seconds_since(t0);
  report(3, mismatch == 0 && errors == 0 && t < 300,
         std::to_string(kCorpus) + " formulas (n <= 12), " + std::to_string(mismatch) + " mismatches, " +
             std::to_string(errors) + " errors, " + num(t, 1) + " s with the contract checks");
  report(4, mu_up == 0 && sat_changed == 0 && structure == 0 && potential == 0,
         "mu increases " + std::to_string(mu_up) + ", satisfiability changes " + std::to_string(sat_changed) +
             ", structure violations " + std::to_string(structure) + ", potential non-decreases " +
             std::to_string(potential) + " over " + std::to_string(applications) + " rule applications (" +
             std::to_string(exempt) + " duplicate empty-clause deletions)");
}

struct AuditTally {
  std::map<std::string, long> failures;
  std::map<std::string, std::string> first_detail;
  std::map<int, long> hits;
  SolveStats total;
  long nodes = 0;
};

void add_run(AuditTally& t, const SolveReport& r) {
  for (const auto& f : r.failures) {
    if (t.failures[f.kind]++ == 0) t.first_detail[f.kind] = "step " + std::to_string(f.step) + ": " + f.detail;
  }
  for (auto [k, v] : r.stats.step_hits) t.hits[k] += v;
  t.total.bound_checks += r.stats.bound_checks;
  t.total.extra_decrease_checks += r.stats.extra_decrease_checks;
  t.total.matching_checks += r.stats.matching_checks;
  t.total.shift_cases += r.stats.shift_cases;
  t.total.shift_discharged += r.stats.shift_discharged;
  t.nodes += r.stats.nodes;
}

// The small corpus rarely reaches degree-5 structure, so the audit also runs on
// larger formulas with exact degree profiles, visiting the whole search tree.
ProfileConfig wide_config(std::uint64_t seed, int i) {
  static const double shares[4][2] = {{0, 0}, {0.02, 0.02}, {0, 0}, {0, 0.05}};
  ProfileConfig c;
  c.num_vars = 30 + (i * 7) % 31;
  c.share3 = shares[i % 4][0];
  c.share4 = shares[i % 4][1];
  c.len_min = 3;
  c.len_max = i % 4 >= 2 ? 4 : 3;
  c.seed = seed + 1000003ULL * static_cast<std::uint64_t>(i + 1);
  return c;
}

constexpr int kWide = 240;
constexpr long kWideBudget = 100000;

void criteria5and6(std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  AuditTally t;
  SolveOptions o;
  o.audit = true;
  int errors = 0;
  auto run = [&](const Formula& f, const char* which, int i) {
    try {
      auto r = solve(f, o);
      if (!r.failures.empty()) std::printf("  %s corpus index %d: %zu audit failures\n", which, i, r.failures.size());
      add_run(t, r);
    } catch (const std::exception& e) {
      ++errors;
      std::printf("  %s corpus index %d: %s\n", which, i, e.what());
    }
  };
  for (int i = 0; i < kCorpus; ++i) run(generate(corpus_config(seed, i, kMaxVars)), "small", i);
  o.full_tree = true;
  o.node_budget = kWideBudget;
  for (int i = 0; i < kWide; ++i) run(generate_profiled(wide_config(seed, i)), "wide", i);
  double dt = seconds_since(t0);
  std::string hits;
  for (auto [k, v] : t.hits) hits += " " + std::to_string(k) + ":" + std::to_string(v);
  std::printf("  audit coverage: %ld nodes, step hits%s\n", t.nodes, hits.c_str());
  std::printf("  checks: %ld bound, %ld extra-decrease, %ld matching, %ld shift cases; %.1f s\n",
              t.total.bound_checks, t.total.extra_decrease_checks, t.total.matching_checks, t.total.shift_cases, dt);
  for (auto [k, v] : t.failures)
    std::printf("  audit failures of kind %s: %ld (first at %s)\n", k.c_str(), v, t.first_detail[k].c_str());
  auto n = [&](const char* k) {
    auto it = t.failures.find(k);
    return it == t.failures.end() ? 0L : it->second;
  };
  long other = 0;
  for (const char* k : {"structure", "stats", "index", "step10-resolution"}) other += n(k);
  report(5, errors == 0 && n("bound-min") + n("bound-sum") + n("matching") + n("degree-zero") + n("extra-decrease") + other == 0,
         "bound " + std::to_string(n("bound-min") + n("bound-sum")) + ", matching " + std::to_string(n("matching")) +
             ", degree-zero " + std::to_string(n("degree-zero")) + ", extra-decrease " +
             std::to_string(n("extra-decrease")) + ", other " + std::to_string(other) + " violations; " +
             std::to_string(errors) + " errors");
  report(6, errors == 0 && n("shift") == 0 && t.total.shift_cases == t.total.shift_discharged,
         std::to_string(t.total.shift_cases) + " shift cases, " + std::to_string(t.total.shift_discharged) +
             " discharged");
}

void criterion7() {
  WeightTable w(opt.w3, opt.sigma);
  auto cat = catalog(w);
  bool ok = true;
  std::string detail;
  const std::vector<double> common{4 * opt.w3, 8 * opt.w3};
  const double common_tau = oracles::tau(common);
  for (const auto& e : cat) {
    if (e.label != "7" && e.label != "14" && e.label != "15" && e.label != "16") continue;
    double gap = std::abs(e.factor - opt.alpha);
    ok = ok && gap <= 1e-3;
    detail += e.label + " " + num(e.factor) + "; ";
    if (e.label == "14" || e.label == "15")
      ok = ok && e.vector.size() == 2 && std::abs(e.vector[0] - common[0]) < 1e-9 &&
           std::abs(e.vector[1] - common[1]) < 1e-9;
    // the fallback constant is the root for [4, 8], rounded to four places
    if (e.label == "16") ok = ok && std::abs(e.factor - common_tau) < 1e-4;
  }
  report(7, ok, detail + "alpha " + num(opt.alpha) + ", tau[4w3, 8w3] " + num(common_tau));
}

}  // namespace

int main() {
  const std::uint64_t seed = default_seed();
  std::printf("corpus seed %llu\n", static_cast<unsigned long long>(seed));
  criterion1();
  criterion2();
  criteria3and4(seed);
  criteria5and6(seed);
  criterion7();
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
