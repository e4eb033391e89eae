#include "mcsat/harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

#include "mcsat/dimacs.hpp"

namespace mcsat {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void validate(const GeneratorConfig& c) {
  if (c.num_vars < 1) throw ConfigError("num_vars must be positive");
  if (c.num_clauses < 0) throw ConfigError("num_clauses must be non-negative");
  if (c.len_min < 1 || c.len_min > c.len_max) throw ConfigError("need 1 <= len_min <= len_max");
  if (c.len_max > c.num_vars) throw ConfigError("len_max exceeds num_vars");
  if (c.degree_cap && *c.degree_cap < 1) throw ConfigError("degree_cap must be positive");
  for (double r : {c.tautology_rate, c.duplicate_rate})
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("rates must lie in [0,1]");
}

}  // namespace

Formula generate(const GeneratorConfig& cfg) {
  validate(cfg);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> len_d(cfg.len_min, cfg.len_max);
  std::bernoulli_distribution coin(0.5), taut(cfg.tautology_rate), dup(cfg.duplicate_rate);
  const int n = cfg.num_vars;
  std::vector<int> cap(n + 1, cfg.degree_cap.value_or(0));
  std::vector<Clause> out;
  for (int k = 0; k < cfg.num_clauses; ++k) {
    int len = len_d(rng);
    std::vector<Var> vars;
    if (!cfg.degree_cap) {
      std::vector<Var> pool(n);
      for (int v = 1; v <= n; ++v) pool[v - 1] = v;
      std::shuffle(pool.begin(), pool.end(), rng);
      vars.assign(pool.begin(), pool.begin() + len);
    } else {
      std::vector<double> wts(n + 1, 0.0);
      for (int v = 1; v <= n; ++v) wts[v] = cap[v];
      for (int j = 0; j < len; ++j) {
        if (std::all_of(wts.begin(), wts.end(), [](double x) { return x <= 0; })) break;
        std::discrete_distribution<int> pick(wts.begin(), wts.end());
        Var v = pick(rng);
        vars.push_back(v);
        wts[v] = 0;
        --cap[v];
      }
      if (vars.empty()) break;
    }
    Clause c;
    for (Var v : vars) c.push_back(Literal{v, coin(rng)});
    if (c.size() >= 2) {
      std::uniform_int_distribution<int> pos(0, static_cast<int>(c.size()) - 1);
      for (bool make_taut : {true, false}) {
        if (!(make_taut ? taut(rng) : dup(rng))) continue;
        int i = pos(rng), j = pos(rng);
        while (j == i) j = pos(rng);
        if (cfg.degree_cap) {
          if (cap[c[i].var] <= 0) continue;
          --cap[c[i].var];
          ++cap[c[j].var];
        }
        c[j] = make_taut ? c[i].neg() : c[i];
      }
    }
    out.push_back(c);
  }
  return Formula(out, n + 1);
}

Formula generate_profiled(const ProfileConfig& cfg) {
  if (cfg.num_vars < 5) throw ConfigError("num_vars must be at least 5");
  if (cfg.len_min < 2 || cfg.len_min > cfg.len_max || cfg.len_max > cfg.num_vars)
    throw ConfigError("need 2 <= len_min <= len_max <= num_vars");
  if (!(cfg.share3 >= 0 && cfg.share4 >= 0 && cfg.share3 + cfg.share4 <= 1)) throw ConfigError("bad degree shares");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<Literal> slots;
  for (Var v = 1; v <= cfg.num_vars; ++v) {
    double r = u(rng);
    int d = r < cfg.share3 ? 3 : r < cfg.share3 + cfg.share4 ? 4 : 5;
    int pos = d / 2 + (d % 2 == 1 && coin(rng));
    for (int k = 0; k < d; ++k) slots.push_back(Literal{v, k < pos});
  }
  std::uniform_int_distribution<int> len_d(cfg.len_min, cfg.len_max);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<Clause> out;
    std::size_t i = 0;
    while (i < slots.size()) {
      std::size_t len = std::min<std::size_t>(len_d(rng), slots.size() - i);
      if (slots.size() - i - len < static_cast<std::size_t>(cfg.len_min)) len = slots.size() - i;
      out.emplace_back(slots.begin() + i, slots.begin() + i + len);
      i += len;
    }
    // swap slots until no clause repeats a variable or shares two literals with another clause
    std::uniform_int_distribution<std::size_t> pick_clause(0, out.size() - 1);
    auto first_bad = [&]() -> long {
      std::map<std::pair<std::size_t, std::size_t>, int> pairs;
      for (std::size_t ci = 0; ci < out.size(); ++ci) {
        const Clause& c = out[ci];
        for (std::size_t a = 0; a < c.size(); ++a)
          for (std::size_t b = a + 1; b < c.size(); ++b) {
            if (c[a].var == c[b].var) return static_cast<long>(ci);
            if (cfg.no_shared_pairs && ++pairs[std::minmax(c[a].code(), c[b].code())] > 1) return static_cast<long>(ci);
          }
      }
      return -1;
    };
    bool clean = false;
    for (int round = 0; round < 20000 && !clean; ++round) {
      long bad = first_bad();
      if (bad < 0) {
        clean = true;
        break;
      }
      Clause& c = out[bad];
      Clause& o = out[pick_clause(rng)];
      std::swap(c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)],
                o[std::uniform_int_distribution<std::size_t>(0, o.size() - 1)(rng)]);
    }
    if (clean) return Formula(out, cfg.num_vars + 1);
  }
  throw ConfigError("could not deal clauses without repeated variables");
}

bool oracle(const Formula& f) {
  auto vars = f.variables();
  if (static_cast<int>(vars.size()) > kOracleMaxVars)
    throw OracleRefusal("oracle: " + std::to_string(vars.size()) + " variables exceed the cap of " +
                        std::to_string(kOracleMaxVars));
  std::map<Var, int> bit;
  for (std::size_t i = 0; i < vars.size(); ++i) bit[vars[i]] = static_cast<int>(i);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const Clause& c : f.clause_list()) {
    std::uint32_t p = 0, q = 0;
    for (Literal l : c) (l.positive ? p : q) |= 1u << bit[l.var];
    masks.emplace_back(p, q);
  }
  const std::uint64_t total = 1ULL << vars.size();
  for (std::uint64_t a = 0; a < total; ++a) {
    auto x = static_cast<std::uint32_t>(a);
    bool ok = std::all_of(masks.begin(), masks.end(), [x](auto m) { return ((x & m.first) | (~x & m.second)) != 0; });
    if (ok) return true;
  }
  return false;
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("MC_SAT_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
  }
  return fallback;
}

GeneratorConfig corpus_config(std::uint64_t base_seed, int index, int max_vars) {
  if (max_vars < 1) throw ConfigError("max_vars must be positive");
  std::uint64_t seed = splitmix(base_seed ^ splitmix(static_cast<std::uint64_t>(index)));
  std::mt19937_64 rng(seed);
  auto uni = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  GeneratorConfig c;
  c.seed = seed;
  switch (index % 3) {
    case 0:
      c.num_vars = uni(1, max_vars);
      c.len_min = 1;
      c.len_max = std::min(5, c.num_vars);
      c.num_clauses = uni(1, 5 * c.num_vars);
      c.tautology_rate = 0.1;
      c.duplicate_rate = 0.1;
      break;
    case 1:
      c.num_vars = uni(1, max_vars);
      c.degree_cap = uni(3, 6);
      c.len_min = 1;
      c.len_max = std::min(4, c.num_vars);
      c.num_clauses = *c.degree_cap * c.num_vars / 2;
      c.tautology_rate = 0.05;
      c.duplicate_rate = 0.05;
      break;
    default:
      c.num_vars = uni(std::min(5, max_vars), max_vars);
      c.degree_cap = 5;
      c.len_min = std::min(2, c.num_vars);
      c.len_max = std::min(4, c.num_vars);
      c.num_clauses = 2 * c.num_vars + 1;
      break;
  }
  return c;
}

FuzzReport fuzz(int count, int max_vars, std::uint64_t base_seed) {
  FuzzReport r;
  for (int i = 0; i < count; ++i) {
    GeneratorConfig cfg = corpus_config(base_seed, i, max_vars);
    Formula f = generate(cfg);
    ++r.count;
    try {
      bool expect = oracle(f);
      SatResult got = solve(f).result;
      if (got != (expect ? SatResult::Sat : SatResult::Unsat))
        r.mismatches.push_back(FuzzMismatch{cfg.seed, emit_dimacs(f), expect, got});
    } catch (const std::exception& e) {
      r.errors.push_back("seed " + std::to_string(cfg.seed) + ": " + e.what() + "\n" + emit_dimacs(f));
    }
  }
  return r;
}

}  // namespace mcsat
