// mcsat: solve, audit and analysis front end.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "mcsat/dimacs.hpp"
#include "mcsat/harness.hpp"
#include "mcsat/measure.hpp"
#include "mcsat/solver.hpp"

using namespace mcsat;
using nlohmann::json;

namespace {

constexpr int kExitSat = 10, kExitUnsat = 20, kExitError = 2;

WeightTable parse_weights(const std::string& s) {
  if (s.empty()) return WeightTable::reference();
  auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--weights expects w3,sigma");
  std::size_t p1 = 0, p2 = 0;
  double w3 = std::stod(s.substr(0, comma), &p1);
  double sigma = std::stod(s.substr(comma + 1), &p2);
  if (p1 != comma || p2 != s.size() - comma - 1) throw std::invalid_argument("--weights expects w3,sigma");
  return WeightTable(w3, sigma);
}

std::string fmt(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

json node_json(const NodeAudit& n) {
  json j;
  j["node"] = n.node_id;
  j["parent"] = n.parent_id;
  j["step"] = n.step;
  j["pivot"] = n.pivot ? json(n.pivot->to_dimacs()) : json(nullptr);
  j["mu"] = n.mu;
  j["deltas"] = n.delta_children;
  j["bound"] = n.bound ? json{{"min", n.bound->min}, {"sum", n.bound->sum}} : json(nullptr);
  j["shift_case"] = n.shift_case;
  j["shift_discharged"] = n.shift_discharged;
  json rules = json::array();
  for (const auto& a : n.rule_applications)
    rules.push_back({{"rule", a.rule},
                     {"site", a.site},
                     {"L_before", a.L_before},
                     {"L_after", a.L_after},
                     {"mu_before", a.mu_before},
                     {"mu_after", a.mu_after}});
  j["rules"] = rules;
  return j;
}

json stats_json(const SolveStats& s) {
  json hits = json::object();
  for (auto [k, v] : s.step_hits) hits[std::to_string(k)] = v;
  return {{"nodes", s.nodes},
          {"fallback_nodes", s.fallback_nodes},
          {"step_hits", hits},
          {"bound_checks", s.bound_checks},
          {"extra_decrease_checks", s.extra_decrease_checks},
          {"matching_checks", s.matching_checks},
          {"shift_cases", s.shift_cases},
          {"shift_discharged", s.shift_discharged}};
}

int exit_for(SatResult r) {
  std::cout << "s " << (r == SatResult::Sat ? "SATISFIABLE" : r == SatResult::Unsat ? "UNSATISFIABLE" : "UNKNOWN")
            << "\n";
  return r == SatResult::Sat ? kExitSat : r == SatResult::Unsat ? kExitUnsat : 0;
}

struct Row {
  int step;
  std::vector<const CatalogEntry*> parts;
};

std::vector<Row> step_rows(const std::vector<CatalogEntry>& cat) {
  std::map<int, Row> by_step;
  for (const auto& e : cat) {
    if (e.reference == 0.0) continue;
    by_step.try_emplace(e.step, Row{e.step, {}}).first->second.parts.push_back(&e);
  }
  std::vector<Row> out;
  for (auto& [k, r] : by_step) out.push_back(r);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcsat: exact CNF-SAT by branch and reduce with measure audit"};
  app.require_subcommand(1);

  std::string file, weights_s;
  bool audit_flag = false;
  long budget = 10'000'000;

  auto* solve_cmd = app.add_subcommand("solve", "decide a DIMACS formula (exit 10 SAT, 20 UNSAT)");
  solve_cmd->add_option("file", file, "DIMACS file")->required();
  solve_cmd->add_flag("--audit", audit_flag, "run the per-node audit; failures go to stderr");
  solve_cmd->add_option("--weights", weights_s, "w3,sigma");
  solve_cmd->add_option("--budget", budget, "node budget")->check(CLI::PositiveNumber);

  auto* audit_cmd = app.add_subcommand("audit", "JSON line per search node; exit 0 iff no audit failure");
  audit_cmd->add_option("file", file, "DIMACS file")->required();
  audit_cmd->add_option("--weights", weights_s, "w3,sigma");
  audit_cmd->add_option("--budget", budget, "node budget")->check(CLI::PositiveNumber);
  bool full_tree = false;
  audit_cmd->add_flag("--full-tree", full_tree, "visit both children even after a satisfiable one");

  std::optional<double> vv_w3, vv_sigma;
  std::string vv_format = "tsv";
  double vv_tol = 1e-4;
  auto* vv_cmd = app.add_subcommand("verify-vectors", "branching factor per step against the reference table");
  vv_cmd->add_option("--w3", vv_w3);
  vv_cmd->add_option("--sigma", vv_sigma);
  vv_cmd->add_option("--format", vv_format)->check(CLI::IsMember({"tsv", "json"}));
  vv_cmd->add_option("--tol", vv_tol);

  double grid_step = 1e-4;
  std::optional<double> sigma_fixed;
  auto* opt_cmd = app.add_subcommand("optimize-weights", "minimize the largest factor over (w3, sigma)");
  opt_cmd->add_option("--grid-step", grid_step)->check(CLI::PositiveNumber);
  opt_cmd->add_option("--sigma-fixed", sigma_fixed);

  GeneratorConfig gcfg;
  gcfg.seed = default_seed();
  std::optional<int> gcap;
  std::string gout;
  auto* gen_cmd = app.add_subcommand("gen", "random DIMACS formula");
  gen_cmd->add_option("--vars", gcfg.num_vars);
  gen_cmd->add_option("--clauses", gcfg.num_clauses);
  auto* len_min_opt = gen_cmd->add_option("--len-min", gcfg.len_min);
  auto* len_max_opt = gen_cmd->add_option("--len-max", gcfg.len_max);
  gen_cmd->add_option("--cap", gcap, "degree cap");
  gen_cmd->add_option("--seed", gcfg.seed, "default: MC_SAT_SEED");
  gen_cmd->add_option("--tautology-rate", gcfg.tautology_rate);
  gen_cmd->add_option("--duplicate-rate", gcfg.duplicate_rate);
  gen_cmd->add_option("-o,--output", gout);
  bool profiled = false;
  ProfileConfig pcfg;
  gen_cmd->add_flag("--profiled", profiled, "exact degrees 3/4/5 with balanced signs");
  gen_cmd->add_option("--share3", pcfg.share3, "with --profiled");
  gen_cmd->add_option("--share4", pcfg.share4, "with --profiled");

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive check (at most 24 variables)");
  oracle_cmd->add_option("file", file, "DIMACS file")->required();

  int fz_count = 1000, fz_vars = 12;
  std::uint64_t fz_seed = default_seed();
  auto* fuzz_cmd = app.add_subcommand("fuzz", "solver against oracle on the seeded corpus");
  fuzz_cmd->add_option("--count", fz_count)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-vars", fz_vars)->check(CLI::Range(1, kOracleMaxVars));
  fuzz_cmd->add_option("--seed", fz_seed, "default: MC_SAT_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "mcsat: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*solve_cmd) {
      SolveOptions o;
      o.weights = parse_weights(weights_s);
      o.audit = audit_flag;
      o.node_budget = budget;
      auto r = solve(read_dimacs_file(file), o);
      if (audit_flag) {
        for (const auto& f : r.failures)
          std::cerr << "audit failure node " << f.node_id << " step " << f.step << " " << f.kind << ": " << f.detail
                    << "\n";
        std::cout << "c audit failures " << r.failures.size() << "\n";
      }
      return exit_for(r.result);
    }
    if (*audit_cmd) {
      SolveOptions o;
      o.weights = parse_weights(weights_s);
      o.audit = true;
      o.full_tree = full_tree;
      o.node_budget = budget;
      o.on_node = [](const NodeAudit& n) { std::cout << node_json(n).dump() << "\n"; };
      auto r = solve(read_dimacs_file(file), o);
      for (const auto& f : r.failures)
        std::cout << json{{"failure", f.kind}, {"node", f.node_id}, {"step", f.step}, {"detail", f.detail}}.dump()
                  << "\n";
      std::cout << json{{"result", to_string(r.result)}, {"failures", r.failures.size()}, {"stats", stats_json(r.stats)}}
                       .dump()
                << "\n";
      return r.failures.empty() ? 0 : 1;
    }
    if (*vv_cmd) {
      bool custom = vv_w3 || vv_sigma;
      WeightTable ref = WeightTable::reference();
      WeightTable w(vv_w3.value_or(ref.w3()), vv_sigma.value_or(ref.sigma()));
      auto cat = catalog(w);
      bool all = true;
      json arr = json::array();
      if (vv_format == "tsv") std::cout << "step\tlabel\tvector\tfactor\treference\tpass\n";
      for (const auto& row : step_rows(cat)) {
        bool pass = true;
        std::string labels, vecs, facs, refs;
        json parts = json::array();
        for (std::size_t i = 0; i < row.parts.size(); ++i) {
          const auto* e = row.parts[i];
          bool ok = std::abs(e->factor - e->reference) <= vv_tol;
          pass = pass && ok;
          const char* sep = i ? ";" : "";
          labels += sep + e->label;
          vecs += sep + (e->vector.empty() ? std::string("-") : "[" + join(e->vector) + "]");
          facs += sep + fmt(e->factor);
          refs += sep + fmt(e->reference, 4);
          parts.push_back({{"label", e->label}, {"vector", e->vector}, {"factor", e->factor}, {"reference", e->reference}});
        }
        all = all && pass;
        std::string verdict = custom ? "-" : pass ? "yes" : "no";
        if (vv_format == "tsv")
          std::cout << row.step << "\t" << labels << "\t" << vecs << "\t" << facs << "\t" << refs << "\t" << verdict
                    << "\n";
        else
          arr.push_back({{"step", row.step}, {"alternatives", parts}, {"pass", verdict}});
      }
      if (vv_format == "json") std::cout << arr.dump(2) << "\n";
      return custom || all ? 0 : 1;
    }
    if (*opt_cmd) {
      auto r = optimize_weights(grid_step, sigma_fixed);
      std::cout << json{{"w3", r.w3}, {"sigma", r.sigma}, {"alpha", r.alpha}, {"sigma_lo", r.sigma_lo}, {"sigma_hi", r.sigma_hi}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*gen_cmd) {
      gcfg.degree_cap = gcap;
      pcfg.num_vars = gcfg.num_vars;
      if (len_min_opt->count()) pcfg.len_min = gcfg.len_min;
      if (len_max_opt->count()) pcfg.len_max = gcfg.len_max;
      pcfg.seed = gcfg.seed;
      std::string text = emit_dimacs(profiled ? generate_profiled(pcfg) : generate(gcfg));
      if (gout.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(gout);
        if (!(out << text)) throw std::runtime_error("cannot write " + gout);
      }
      return 0;
    }
    if (*oracle_cmd) return exit_for(oracle(read_dimacs_file(file)) ? SatResult::Sat : SatResult::Unsat);
    if (*fuzz_cmd) {
      auto r = fuzz(fz_count, fz_vars, fz_seed);
      for (const auto& m : r.mismatches)
        std::cout << "MISMATCH seed " << m.seed << " oracle " << (m.oracle_sat ? "SAT" : "UNSAT") << " solver "
                  << to_string(m.solver) << "\n"
                  << m.dimacs;
      for (const auto& e : r.errors) std::cout << "ERROR " << e;
      std::cout << "fuzz: " << r.count << " formulas, " << r.mismatches.size() << " mismatches, " << r.errors.size()
                << " errors (seed " << fz_seed << ")\n";
      return r.mismatches.empty() && r.errors.empty() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "mcsat: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
