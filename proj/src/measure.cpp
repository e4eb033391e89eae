#include "mcsat/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mcsat {

std::vector<std::string> weight_assumption_violations(double w3, double sigma) {
  std::vector<std::string> bad;
  auto w = [&](int i) -> double {
    if (i <= 2) return 0.0;
    if (i == 3) return w3;
    if (i == 4) return 2 * w3;
    return i;
  };
  auto d = [&](int i) { return w(i) - w(i - 1); };
  // degrees past 7 repeat delta = 1
  if (!(w3 >= d(5))) bad.push_back("w3>=delta5");
  bool ge1 = true, noninc = true;
  for (int i = 3; i <= 7; ++i) {
    if (!(d(i) >= 1)) ge1 = false;
    // delta2 = 0, so the chain starts at delta4 <= delta3
    if (i >= 4 && !(d(i) <= d(i - 1))) noninc = false;
  }
  if (!ge1) bad.push_back("delta>=1");
  if (!noninc) bad.push_back("delta_nonincreasing");
  if (!(w3 - d(5) < 1)) bad.push_back("w3-delta5<1");
  if (!(w3 > 0 && w3 < 2)) bad.push_back("0<w3<2");
  if (!(2 * d(5) > w3)) bad.push_back("2*delta5>w3");
  if (!(sigma >= 0)) bad.push_back("sigma>=0");
  return bad;
}

WeightTable::WeightTable(double w3, double sigma) : w3_(w3), sigma_(sigma) {
  auto bad = weight_assumption_violations(w3, sigma);
  if (!bad.empty()) {
    std::string msg = "infeasible weights w3=" + std::to_string(w3) + " sigma=" + std::to_string(sigma) + ":";
    for (const auto& b : bad) msg += " " + b;
    throw InvalidWeights(msg, bad);
  }
}

WeightTable WeightTable::reference() { return WeightTable(1.94719, 0.86108); }

double WeightTable::w(int degree) const {
  if (degree <= 2) return 0.0;
  if (degree == 3) return w3_;
  if (degree == 4) return 2 * w3_;
  return degree;
}

double mu(const Formula& f, const WeightTable& w) {
  double s = 0.0;
  for (Var v : f.variables()) s += w.w(f.degree(v));
  return s;
}

double branching_factor(const std::vector<double>& a) {
  if (a.empty()) throw std::invalid_argument("branching_factor: empty vector");
  for (double x : a)
    if (!(x > 0)) throw std::invalid_argument("branching_factor: entries must be positive");
  if (a.size() == 1) return 1.0;
  double amin = *std::min_element(a.begin(), a.end());
  auto f = [&](double x) {
    double s = 1.0;
    for (double ai : a) s -= std::pow(x, -ai);
    return s;
  };
  double lo = 1.0, hi = std::pow(static_cast<double>(a.size()), 1.0 / amin);
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  double df = 0.0;
  for (double ai : a) df += ai * std::pow(x, -ai - 1);
  if (df > 0) {
    double nx = x - f(x) / df;
    if (nx > 1.0 && std::abs(f(nx)) <= std::abs(f(x))) x = nx;
  }
  return x;
}

bool covers(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("covers: length mismatch");
  bool dominated = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) dominated = false;
  if (dominated) return true;
  if (a.size() != 2) return false;
  double i = std::min(a[0], a[1]), j = std::max(a[0], a[1]);
  double p = std::min(b[0], b[1]), q = std::max(b[0], b[1]);
  const double tol = 1e-12;
  return std::abs((i + j) - (p + q)) <= tol && i < p && p <= q && q < j;
}

namespace {

struct Row {
  std::string label;
  int step;
  std::vector<double> v;
  double scalar;  // > 0 for scalar rows
  bool optimized;
};

std::vector<Row> rows(double w3, double s) {
  const double w4 = 2 * w3, w5 = 5, w6 = 6;
  const double d4 = w3, d5 = 5 - 2 * w3, d6 = 1;
  return {
      {"3", 3, {w6 + d6, w6 + 11 * d6}, 0, true},
      {"4", 4, {w5 + 2 * w3, w5 + w3 + 7 * d5}, 0, true},
      {"5", 5, {w5 + 2 * d5, w5 + 4 * w3 + 4 * d5}, 0, true},
      {"6", 6, {w5 + 3 * d5 - s, 2 * w5 + 2 * w3 + 3 * d5 - s}, 0, true},
      {"6-unshifted", 6, {w5 + 3 * d5, 2 * w5 + 2 * w3 + 3 * d5}, 0, false},
      {"7", 7, {w5 + w3 + 2 * d5, w5 + w3 + 6 * d5}, 0, true},
      {"8", 8, {w5 + 4 * d5, w5 + 2 * w3 + 4 * d5}, 0, true},
      {"9", 9, {w5 + 4 * d5, w5 + d4 + 6 * d5}, 0, true},
      {"10", 10, {w5 + 4 * d5, w5 + w4 + 6 * d5}, 0, true},
      {"11a", 11, {w5 + 4 * d5, w5 + w3 + 6 * d5}, 0, true},
      {"11b", 11, {w5 + 4 * d5, w5 + 7 * d5 + s}, 0, true},
      {"12a", 12, {w5 + 4 * d5, w5 + 4 * d5 + 2 * w3}, 0, true},
      {"12b", 12, {w5 + 4 * d5, w5 + w3 + 5 * d5 + s}, 0, true},
      {"13", 13, {}, std::pow(1.3279, 1.0 / w5), true},
      {"14", 14, {w4 + 2 * w3, w4 + 6 * d4}, 0, true},
      {"15", 15, {w4 + 2 * d4, w4 + 6 * d4}, 0, true},
      {"16", 16, {}, std::pow(1.1279, 1.0 / w3), true},
  };
}

const std::map<std::string, double>& reference_factors() {
  static const std::map<std::string, double> ref = {
      {"3", 1.0636},   {"4", 1.0620},   {"5", 1.0624},   {"6", 1.0633},  {"7", 1.0638},  {"8", 1.0636},
      {"9", 1.0629},   {"10", 1.0584},  {"11a", 1.0629}, {"11b", 1.0629}, {"12a", 1.0636}, {"12b", 1.0635},
      {"13", 1.0584},  {"14", 1.0638},  {"15", 1.0638},  {"16", 1.0638},
  };
  return ref;
}

double row_factor(const Row& r) { return r.v.empty() ? r.scalar : branching_factor(r.v); }

}  // namespace

std::vector<CatalogEntry> catalog(const WeightTable& w) {
  std::vector<CatalogEntry> out;
  const auto& ref = reference_factors();
  for (const auto& r : rows(w.w3(), w.sigma())) {
    CatalogEntry e;
    e.label = r.label;
    e.step = r.step;
    e.vector = r.v;
    e.factor = row_factor(r);
    auto it = ref.find(r.label);
    e.reference = it == ref.end() ? 0.0 : it->second;
    out.push_back(e);
  }
  return out;
}

std::optional<AuditBound> audit_bound(int step, const WeightTable& w) {
  const double w3 = w.w3(), w4 = w.w(4), w5 = w.w(5), w6 = w.w(6);
  const double d4 = w.delta(4), d5 = w.delta(5), d6 = w.delta(6);
  auto pair = [](double a, double b) { return AuditBound{std::min(a, b), a + b}; };
  switch (step) {
    case 3: return pair(w6 + d6, w6 + 11 * d6);
    case 4: return pair(w5 + 2 * w3, w5 + w3 + 7 * d5);
    case 5: return pair(w5 + 2 * d5, w5 + 4 * w3 + 4 * d5);
    case 6: return AuditBound{w5 + 3 * d5, 3 * w5 + 2 * w3 + 6 * d5};
    case 7: return pair(w5 + w3 + 2 * d5, w5 + w3 + 6 * d5);
    case 8: return pair(w5 + 4 * d5, w5 + 2 * w3 + 4 * d5);
    case 9: return pair(w5 + 4 * d5, w5 + d4 + 6 * d5);
    case 10: return pair(w5 + 4 * d5, w5 + w4 + 6 * d5);
    case 11: return AuditBound{w5 + 4 * d5, 2 * w5 + 11 * d5};
    case 12: return AuditBound{w5 + 4 * d5, 2 * w5 + w3 + 9 * d5};
    case 14: return pair(w4 + 2 * w3, w4 + 6 * d4);
    case 15: return pair(w4 + 2 * d4, w4 + 6 * d4);
    default: return std::nullopt;
  }
}

namespace {

struct Split {
  double base;                           // rows not depending on sigma
  double sigma_max;                      // Step 6 entries stay positive below this
};

Split split_rows(double w3) {
  Split s{0.0, 0.0};
  for (const auto& r : rows(w3, 0.0)) {
    if (!r.optimized || r.label == "6" || r.label == "11b" || r.label == "12b") continue;
    s.base = std::max(s.base, row_factor(r));
  }
  s.sigma_max = 5 + 3 * (5 - 2 * w3);
  return s;
}

double rising(double w3, double s) {  // Step 6 grows with sigma
  return branching_factor(rows(w3, s)[3].v);
}

double falling(double w3, double s) {  // 11b and 12b shrink with sigma
  auto r = rows(w3, s);
  return std::max(branching_factor(r[10].v), branching_factor(r[12].v));
}

// sigma where Step 6 meets max(11b, 12b); 0 when Step 6 already dominates
double crossing(double w3, double sigma_max) {
  if (rising(w3, 0.0) >= falling(w3, 0.0)) return 0.0;
  double lo = 0.0, hi = sigma_max * (1 - 1e-9);
  while (hi - lo > 1e-11) {
    double mid = 0.5 * (lo + hi);
    if (rising(w3, mid) < falling(w3, mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double objective(double w3, std::optional<double> sigma_fixed) {
  if (sigma_fixed) return max_factor(w3, *sigma_fixed);
  Split s = split_rows(w3);
  double c = crossing(w3, s.sigma_max);
  return std::max({s.base, rising(w3, c), falling(w3, c)});
}

}  // namespace

double max_factor(double w3, double sigma) {
  double m = 0.0;
  for (const auto& r : rows(w3, sigma)) {
    if (!r.optimized) continue;
    if (!r.v.empty() && *std::min_element(r.v.begin(), r.v.end()) <= 0) return INFINITY;
    m = std::max(m, row_factor(r));
  }
  return m;
}

OptimizeResult optimize_weights(double grid_step, std::optional<double> sigma_fixed) {
  if (!(grid_step > 0)) throw std::invalid_argument("grid step must be positive");
  const double lo = 5.0 / 3.0, hi = 2.0 - 1e-9;
  double best_w = lo, best = INFINITY;
  for (double w3 = lo; w3 < hi; w3 += grid_step) {
    double v = objective(w3, sigma_fixed);
    if (v < best) {
      best = v;
      best_w = w3;
    }
  }
  // golden-section refinement around the best grid point
  double a = std::max(lo, best_w - grid_step), b = std::min(hi, best_w + grid_step);
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = objective(c, sigma_fixed), fd = objective(d, sigma_fixed);
  while (b - a > 1e-11) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = objective(c, sigma_fixed);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = objective(d, sigma_fixed);
    }
  }
  double w3 = 0.5 * (a + b);
  double alpha = objective(w3, sigma_fixed);
  if (best < alpha) {
    w3 = best_w;
    alpha = best;
  }

  OptimizeResult res;
  res.w3 = w3;
  res.alpha = alpha;
  if (sigma_fixed) {
    res.sigma = res.sigma_lo = res.sigma_hi = *sigma_fixed;
    return res;
  }
  // every sigma in [sigma_lo, sigma_hi] attains alpha; report the midpoint
  Split s = split_rows(w3);
  double cross = crossing(w3, s.sigma_max);
  double l = 0.0, h = cross;
  if (falling(w3, 0.0) > alpha) {
    while (h - l > 1e-11) {
      double m = 0.5 * (l + h);
      if (falling(w3, m) > alpha)
        l = m;
      else
        h = m;
    }
    res.sigma_lo = h;
  } else {
    res.sigma_lo = 0.0;
  }
  l = cross;
  h = s.sigma_max * (1 - 1e-9);
  while (h - l > 1e-11) {
    double m = 0.5 * (l + h);
    if (rising(w3, m) <= alpha)
      l = m;
    else
      h = m;
  }
  res.sigma_hi = l;
  res.sigma = 0.5 * (res.sigma_lo + res.sigma_hi);
  return res;
}

}  // namespace mcsat
