#pragma once

// Growth coefficients of the regularized quantum period: log c_d grows like
// A d - (dim/2) log d + B. Everything here is binary64.

#include "terminal_fano/weights.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace terminal_fano {

class period_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrowthPoint {
  double nu = 0;
  std::vector<double> p;
  double A = 0;
  double B = 0;  // -infinity when some p_i vanishes
  std::int64_t ell = 0;
  std::int64_t dim = 0;
  std::string diagnostic;  // non-empty when B is undefined
};

struct BalanceSolution {
  double nu = 0;
  int iterations = 0;
  double residual = 0;
};

namespace detail {

struct Balance {
  std::vector<double> a, b, c;  // c_i = a_i b - b_i a, zero terms dropped

  explicit Balance(const WeightMatrix& w) {
    const double sa = static_cast<double>(w.sum_a()), sb = static_cast<double>(w.sum_b());
    for (std::size_t i = 0; i < w.size(); ++i) {
      // exact in binary64 for any realistic entry size
      double ci = static_cast<double>(w.a(i)) * sb - static_cast<double>(w.b(i)) * sa;
      if (ci == 0) continue;
      a.push_back(static_cast<double>(w.a(i)));
      b.push_back(static_cast<double>(w.b(i)));
      c.push_back(ci);
    }
  }

  double operator()(double nu) const {
    double s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * std::log(a[i] + b[i] * nu);
    return s;
  }
};

}  // namespace detail

constexpr int kBalanceMaxIterations = 200;
constexpr int kBalanceMaxExpansions = 60;
constexpr double kBalanceRelTol = 1e-13;

/// Root nu of sum_i (a_i b - b_i a) log(a_i + b_i nu) = 0 on the interval
/// where every a_i + b_i nu > 0, by bracketing and bisection. Throws
/// period_error if no sign change is found.
inline BalanceSolution solve_balance_detailed(const StandardWeightMatrix& sw) {
  const WeightMatrix& w = sw.matrix();
  detail::Balance f(w);
  if (f.c.empty()) throw period_error("balance equation is identically zero");

  // Admissible interval (lower, +inf): lower = max over b_i > 0 of -a_i / b_i.
  double lower = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.b(i) > 0) lower = std::max(lower, -static_cast<double>(w.a(i)) / static_cast<double>(w.b(i)));
  if (!std::isfinite(lower)) throw period_error("no column with positive b_i");

  double hi = std::max(1.0, lower + 1.0);
  int expansions = 0;
  while (!(f(hi) < 0)) {
    if (++expansions > kBalanceMaxExpansions) throw period_error("no sign change bracketed above");
    hi = lower + 2 * (hi - lower);
  }
  double lo = lower + (hi - lower) / 2;
  for (expansions = 0;; ++expansions) {
    double flo = f(lo);
    if (flo > 0) break;
    if (flo == 0) return {lo, 0, 0};
    if (expansions == kBalanceMaxExpansions) throw period_error("no sign change bracketed below");
    hi = lo;
    lo = lower + (lo - lower) / 2;
  }

  int it = 0;
  double mid = lo;
  for (; it < kBalanceMaxIterations; ++it) {
    mid = lo + (hi - lo) / 2;
    double fm = f(mid);
    if (fm == 0) break;
    (fm > 0 ? lo : hi) = mid;
    if (hi - lo <= kBalanceRelTol * std::max(std::abs(mid), std::numeric_limits<double>::min())) break;
  }
  mid = lo + (hi - lo) / 2;
  return {mid, it + 1, f(mid)};
}

inline double solve_balance(const StandardWeightMatrix& w) { return solve_balance_detailed(w).nu; }

/// A = -sum p_i log p_i and B from the root nu, with p_i = (a_i + nu b_i) / (a + nu b).
inline GrowthPoint growth_coefficients(const StandardWeightMatrix& sw, double nu) {
  const WeightMatrix& w = sw.matrix();
  const std::size_t n = w.size();
  GrowthPoint g;
  g.nu = nu;
  g.ell = fano_index(w);
  g.dim = static_cast<std::int64_t>(n) - 2;
  const double sa = static_cast<double>(w.sum_a()), sb = static_cast<double>(w.sum_b());
  const double denom = sa + nu * sb;
  g.p.resize(n);
  bool vanishing = false;
  for (std::size_t i = 0; i < n; ++i) {
    g.p[i] = (static_cast<double>(w.a(i)) + nu * static_cast<double>(w.b(i))) / denom;
    if (g.p[i] <= 0) {
      g.p[i] = 0;
      vanishing = true;
    }
  }
  g.A = 0;
  for (double p : g.p)
    if (p > 0) g.A -= p * std::log(p);

  if (vanishing) {
    g.B = -std::numeric_limits<double>::infinity();
    g.diagnostic = "some p_i vanishes; B undefined";
    return g;
  }
  const double ell = static_cast<double>(g.ell);
  double sum_log_p = 0, quad = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double ci = static_cast<double>(w.a(i)) * sb - static_cast<double>(w.b(i)) * sa;
    sum_log_p += std::log(g.p[i]);
    quad += ci * ci / (ell * ell * g.p[i]);
  }
  g.B = -0.5 * static_cast<double>(g.dim) * std::log(2 * std::numbers::pi) - 0.5 * sum_log_p - 0.5 * std::log(quad);
  return g;
}

inline GrowthPoint growth_point(const StandardWeightMatrix& w) { return growth_coefficients(w, solve_balance(w)); }

}  // namespace terminal_fano
