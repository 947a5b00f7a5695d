#pragma once

// Terminality of Picard rank two toric varieties, decided three ways:
//
//  * terminal_prop1: directly from the weight matrix. For each vertex i in the
//    smaller of s_+ and s_-, the simplex on the other rays is tested for
//    stray lattice points by scanning the finite group generated by the two
//    barycentric relations among the rays.
//  * oracle_terminal_fan: cone by cone over the fan, enumerating the group
//    Z^n / (cone lattice) through a Smith normal form.
//  * oracle_terminal_polytope: brute-force lattice points of conv(e_i) in low
//    dimension.
//
// wps_terminal is the rank-one criterion for weighted projective spaces.

#include "terminal_fano/fan.hpp"
#include "terminal_fano/lattice.hpp"
#include "terminal_fano/weights.hpp"

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace terminal_fano {

struct SimplexInvariants {
  std::size_t vertex = 0;  // 0-based column index i
  std::int64_t g = 0;      // gcd(a_i, b_i)
  std::int64_t bezout_a = 0, bezout_b = 0;  // bezout_a * a_i + bezout_b * b_i = g
  std::vector<std::int64_t> alpha;          // (a_j b_i - b_j a_i) / g
  std::vector<std::int64_t> beta;           // -bezout_a a_j - bezout_b b_j
  std::int64_t alpha_sum = 0;
  std::int64_t beta_sum = 0;
  std::int64_t f = 0;  // |alpha_sum| g / gcd(g, beta_sum)
};

enum class Method { prop1, fan_oracle, polytope_oracle };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::prop1: return "prop1";
    case Method::fan_oracle: return "fan_oracle";
    case Method::polytope_oracle: return "polytope_oracle";
  }
  return "?";
}

/// Failing (i, k, l) of the weight-matrix criterion. The offending point is
/// sum_j (numerators[j] / denominator) e_j.
struct Prop1Witness {
  std::size_t vertex = 0;
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;
};

/// A lattice point that should not be there; `cone` is empty for the
/// polytope oracle.
struct LatticeWitness {
  std::vector<std::int64_t> point;
  std::vector<std::size_t> cone;
};

using Witness = std::variant<Prop1Witness, LatticeWitness>;

struct TerminalityVerdict {
  bool terminal = true;
  Method method = Method::prop1;
  std::optional<Witness> witness;  // present iff !terminal
};

namespace detail {

template <class Int>
struct Invariants {
  Int g, bezout_a, bezout_b, alpha_sum, beta_sum, f;
  std::vector<Int> alpha, beta;
};

template <class Int>
Invariants<Int> simplex_invariants(const WeightMatrix& w, std::size_t i, const Int& shift) {
  const std::size_t n = w.size();
  Int ai = w.a(i), bi = w.b(i);
  auto [g, s, t] = ext_gcd(ai, bi);
  Invariants<Int> inv{g, s + shift * (bi / g), t - shift * (ai / g), 0, 0, 0, {}, {}};
  inv.alpha.resize(n);
  inv.beta.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Int num = Int(w.a(j)) * bi - Int(w.b(j)) * ai;
    if (num % g != Int(0)) throw std::logic_error("non-integral alpha coefficient");
    inv.alpha[j] = num / g;
    inv.beta[j] = -inv.bezout_a * Int(w.a(j)) - inv.bezout_b * Int(w.b(j));
    inv.alpha_sum += inv.alpha[j];
    inv.beta_sum += inv.beta[j];
  }
  if (inv.alpha_sum == Int(0)) throw invalid_matrix("column parallel to the column sum; not Q-factorial");
  inv.f = abs_of(inv.alpha_sum) * g / gcd_of(g, inv.beta_sum);
  return inv;
}

// Scans the (k, l) grid. Numerators live in [0, modulus); S must hold
// n * modulus without overflow.
template <class S>
std::optional<Prop1Witness> scan_classes(std::size_t i, const std::vector<S>& step_k, const std::vector<S>& step_l,
                                         const std::vector<S>& target, bool origin_inside, S modulus, S f, S g) {
  const std::size_t n = step_k.size();
  std::vector<S> base(n, S(0)), cur(n);
  for (S l = 0; l < g; l += S(1)) {
    cur = base;
    S total = 0;
    for (std::size_t j = 0; j < n; ++j) total += cur[j];
    for (S k = 0; k < f; k += S(1)) {
      if (total == modulus && (!origin_inside || cur != target)) {
        Prop1Witness wit{i, to_i64(k), to_i64(l), {}, to_i64(modulus)};
        for (const auto& c : cur) wit.numerators.push_back(to_i64(c));
        return wit;
      }
      total = 0;
      for (std::size_t j = 0; j < n; ++j) {
        S next = cur[j] + step_k[j];
        cur[j] = next >= modulus ? S(next - modulus) : next;
        total += cur[j];
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      base[j] += step_l[j];
      if (base[j] >= modulus) base[j] -= modulus;
    }
  }
  return std::nullopt;
}

template <class Int>
std::optional<Prop1Witness> mostly_empty_witness(const WeightMatrix& w, std::size_t i, const Int& shift) {
  const auto inv = simplex_invariants<Int>(w, i, shift);
  const std::size_t n = w.size();
  const Int f = inv.f, g = inv.g, modulus = f * g;
  const Int abs_alpha = abs_of(inv.alpha_sum);
  const Int alpha_sign = sign_of(inv.alpha_sum);
  const Int scale = modulus / abs_alpha;  // g^2 / gcd(g, beta_sum)

  // All fractional parts share the denominator f*g; frac(alpha^j / alpha)
  // becomes target[j] / (f*g). The class matching target is the origin only
  // when the origin lies in the simplex, i.e. every alpha^j / alpha >= 0;
  // otherwise that class is some other lattice point of the simplex.
  std::vector<Int> step_k(n), step_l(n), target(n);
  bool origin_inside = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i && inv.alpha[j] * alpha_sign < Int(0)) origin_inside = false;
    step_k[j] = floor_mod(inv.alpha[j] * g, modulus);
    step_l[j] = floor_mod(inv.beta[j] * f, modulus);
    target[j] = floor_mod(inv.alpha[j] * alpha_sign, abs_alpha) * scale;
  }

  // Unchecked 64-bit scan when the totals cannot overflow.
  constexpr std::int64_t kFastLimit = std::int64_t(1) << 40;
  if (modulus < Int(kFastLimit) && n < 1000) {
    auto narrow = [](const std::vector<Int>& v) {
      std::vector<std::int64_t> out;
      out.reserve(v.size());
      for (const auto& x : v) out.push_back(to_i64(x));
      return out;
    };
    return scan_classes<std::int64_t>(i, narrow(step_k), narrow(step_l), narrow(target), origin_inside,
                                      to_i64(modulus), to_i64(f), to_i64(g));
  }
  return scan_classes<Int>(i, step_k, step_l, target, origin_inside, modulus, f, g);
}

// Both index sets, split by the sign of a_i b - b_i a.
template <class Int>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sign_split(const WeightMatrix& w) {
  Int sa = 0, sb = 0;
  for (std::size_t i = 0; i < w.size(); ++i) sa += Int(w.a(i)), sb += Int(w.b(i));
  std::vector<std::size_t> plus, minus;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Int c = Int(w.a(i)) * sb - Int(w.b(i)) * sa;
    if (c > Int(0))
      plus.push_back(i);
    else if (c < Int(0))
      minus.push_back(i);
    else
      throw invalid_matrix("column parallel to the column sum; not Q-factorial");
  }
  return {std::move(plus), std::move(minus)};
}

}  // namespace detail

/// Integer data attached to the simplex opposite vertex i. `bezout_shift`
/// selects the Bezout pair (A + t b_i/g, B - t a_i/g).
inline SimplexInvariants simplex_invariants(const StandardWeightMatrix& w, std::size_t i,
                                            std::int64_t bezout_shift = 0) {
  return with_widening([&]<class Int>() {
    auto inv = detail::simplex_invariants<Int>(w.matrix(), i, Int(bezout_shift));
    SimplexInvariants out;
    out.vertex = i;
    out.g = to_i64(inv.g);
    out.bezout_a = to_i64(inv.bezout_a);
    out.bezout_b = to_i64(inv.bezout_b);
    for (const auto& x : inv.alpha) out.alpha.push_back(to_i64(x));
    for (const auto& x : inv.beta) out.beta.push_back(to_i64(x));
    out.alpha_sum = to_i64(inv.alpha_sum);
    out.beta_sum = to_i64(inv.beta_sum);
    out.f = to_i64(inv.f);
    return out;
  });
}

/// Witness that the simplex opposite vertex i contains a lattice point other
/// than its vertices and the origin, or nullopt if it is mostly empty.
inline std::optional<Prop1Witness> prop1_witness(const StandardWeightMatrix& w, std::size_t i,
                                                 std::int64_t bezout_shift = 0) {
  return with_widening(
      [&]<class Int>() { return detail::mostly_empty_witness<Int>(w.matrix(), i, Int(bezout_shift)); });
}

inline bool is_mostly_empty_prop1(const StandardWeightMatrix& w, std::size_t i, std::int64_t bezout_shift = 0) {
  return !prop1_witness(w, i, bezout_shift).has_value();
}

/// Vertices whose simplices triangulate conv(e_i): the smaller of s_+ and s_-
/// (s_+ on a tie).
inline std::vector<std::size_t> triangulating_vertices(const WeightMatrix& w) {
  auto [plus, minus] = with_widening([&]<class Int>() { return detail::sign_split<Int>(w); });
  return minus.size() < plus.size() ? minus : plus;
}

inline TerminalityVerdict terminal_prop1(const StandardWeightMatrix& w) {
  for (std::size_t i : triangulating_vertices(w.matrix()))
    if (auto wit = prop1_witness(w, i)) return {false, Method::prop1, Witness(std::move(*wit))};
  return {true, Method::prop1, std::nullopt};
}

namespace detail {

template <class Int>
std::optional<LatticeWitness> cone_witness(const RaySet& rays, const std::vector<std::size_t>& cone) {
  const std::size_t n = rays.dim;
  Matrix<Int> gens = cone_generators<Int>(rays, cone);
  SmithForm<Int> snf = smith_form(gens);
  const auto& d = snf.invariants;
  for (const auto& x : d)
    if (x == Int(0)) throw fan_error("degenerate maximal cone");
  const Int top = d.back();
  if (top == Int(1)) return std::nullopt;

  // Z^n / gens Z^n is represented by y with 0 <= y_m < d_m; the point
  // left^-1 y has coordinates right * diag(1/d) * y in the cone generators.
  std::vector<std::size_t> active;
  for (std::size_t m = 0; m < n; ++m)
    if (d[m] != Int(1)) active.push_back(m);
  std::vector<Int> y(n, Int(0)), lambda(n);
  for (;;) {
    // odometer over the active coordinates
    std::size_t pos = 0;
    while (pos < active.size()) {
      auto m = active[pos];
      y[m] += Int(1);
      if (y[m] < d[m]) break;
      y[m] = Int(0);
      ++pos;
    }
    if (pos == active.size()) return std::nullopt;

    Int total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Int num = 0;
      for (auto m : active) num += snf.right(k, m) * y[m] * (top / d[m]);
      lambda[k] = floor_mod(num, top);
      total += lambda[k];
    }
    if (total <= top) {
      LatticeWitness wit;
      wit.cone = cone;
      for (std::size_t r = 0; r < n; ++r) {
        Int coord = 0;
        for (std::size_t k = 0; k < n; ++k) coord += lambda[k] * gens(r, k);
        wit.point.push_back(to_i64(coord / top));
      }
      return wit;
    }
  }
}

}  // namespace detail

/// Witness for one maximal cone: a nonzero lattice point of the cone, not a
/// generator, on or below the hyperplane through the generators.
inline std::optional<LatticeWitness> cone_terminality_witness(const RaySet& rays,
                                                              const std::vector<std::size_t>& cone) {
  return with_widening([&]<class Int>() { return detail::cone_witness<Int>(rays, cone); });
}

inline TerminalityVerdict oracle_terminal_fan(const StandardWeightMatrix& w) {
  RaySet rays = kernel_rays(w);
  MaximalConeSet cones = maximal_cones(w);
  if (cones.cones.empty()) throw fan_error("no maximal cones; invalid weight matrix");
  for (const auto& cone : cones.cones)
    if (auto wit = cone_terminality_witness(rays, cone)) return {false, Method::fan_oracle, Witness(std::move(*wit))};
  return {true, Method::fan_oracle, std::nullopt};
}

namespace detail {

// conv(e_1..e_N) is the union of the N simplices obtained by dropping one
// vertex (Caratheodory in dimension N - 2).
template <class Int>
std::optional<LatticeWitness> polytope_witness(const RaySet& rays) {
  const std::size_t n = rays.rays.size(), dim = rays.dim;
  struct Simplex {
    Matrix<Int> adj;  // adj * [x; 1] = det * barycentric coordinates
    Int det;
  };
  std::vector<Simplex> simplices;
  for (std::size_t drop = 0; drop < n; ++drop) {
    Matrix<Int> m(dim + 1, dim + 1);
    for (std::size_t c = 0, col = 0; c < n; ++c) {
      if (c == drop) continue;
      for (std::size_t r = 0; r < dim; ++r) m(r, col) = Int(rays.rays[c][r]);
      m(dim, col) = Int(1);
      ++col;
    }
    Int det = determinant(m);
    if (det == Int(0)) continue;
    Matrix<Int> adj = adjugate(m);
    if (det < Int(0)) {
      det = -det;
      for (std::size_t r = 0; r <= dim; ++r) adj.negate_row(r);
    }
    simplices.push_back({std::move(adj), det});
  }

  std::vector<std::int64_t> lo(dim, 0), hi(dim, 0);
  for (const auto& e : rays.rays)
    for (std::size_t r = 0; r < dim; ++r) lo[r] = std::min(lo[r], e[r]), hi[r] = std::max(hi[r], e[r]);

  std::set<std::vector<std::int64_t>> allowed(rays.rays.begin(), rays.rays.end());
  allowed.insert(std::vector<std::int64_t>(dim, 0));

  std::vector<std::int64_t> x = lo;
  for (;;) {
    if (!allowed.count(x)) {
      bool inside = false;
      for (const auto& s : simplices) {
        bool all_nonneg = true;
        for (std::size_t r = 0; r <= dim && all_nonneg; ++r) {
          Int v = s.adj(r, dim);
          for (std::size_t c = 0; c < dim; ++c) v += s.adj(r, c) * Int(x[c]);
          if (v < Int(0)) all_nonneg = false;
        }
        if (all_nonneg) {
          inside = true;
          break;
        }
      }
      if (inside) return LatticeWitness{x, {}};
    }
    std::size_t pos = 0;
    while (pos < dim) {
      if (++x[pos] <= hi[pos]) break;
      x[pos] = lo[pos];
      ++pos;
    }
    if (pos == dim) return std::nullopt;
  }
}

}  // namespace detail

constexpr std::size_t kPolytopeOracleMaxDim = 4;

/// Throws std::invalid_argument when N - 2 exceeds kPolytopeOracleMaxDim.
inline TerminalityVerdict oracle_terminal_polytope(const StandardWeightMatrix& w) {
  if (w.size() - 2 > kPolytopeOracleMaxDim)
    throw std::invalid_argument("polytope oracle limited to dimension " + std::to_string(kPolytopeOracleMaxDim));
  RaySet rays = kernel_rays(w);
  auto wit = with_widening([&]<class Int>() { return detail::polytope_witness<Int>(rays); });
  if (wit) return {false, Method::polytope_oracle, Witness(std::move(*wit))};
  return {true, Method::polytope_oracle, std::nullopt};
}

/// Weighted projective space P(weights) is terminal iff
/// sum_i {k w_i / s} lies in {2, ..., n-2} for every k in {2, ..., s-2},
/// s = sum of weights. Throws std::invalid_argument unless the weights are
/// positive and well-formed (every n-1 of them coprime).
inline bool wps_terminal(const std::vector<std::int64_t>& weights) {
  const std::size_t n = weights.size();
  if (n < 2) throw std::invalid_argument("wps_terminal: need at least two weights");
  for (auto x : weights)
    if (x < 1) throw std::invalid_argument("wps_terminal: weights must be positive");
  for (std::size_t d = 0; d < n; ++d) {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != d) g = std::gcd(g, weights[i]);
    if (g != 1) throw std::invalid_argument("wps_terminal: weights are not well-formed");
  }
  return with_widening([&]<class Int>() {
    Int s = 0;
    for (auto x : weights) s += Int(x);
    for (Int k = 2; k <= s - Int(2); k += Int(1)) {
      Int num = 0;
      for (auto x : weights) num += floor_mod(k * Int(x), s);
      // the fractional parts sum to an integer
      Int frac_sum = num / s;
      if (frac_sum < Int(2) || frac_sum > Int(static_cast<std::int64_t>(n)) - Int(2)) return false;
    }
    return true;
  });
}

}  // namespace terminal_fano
