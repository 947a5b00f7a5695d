#pragma once

// The fan of the toric variety defined by a weight matrix: rays from the
// integer kernel, maximal cones from the stability chamber of (a, b).

#include "terminal_fano/lattice.hpp"
#include "terminal_fano/weights.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace terminal_fano {

class fan_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RaySet {
  std::size_t dim = 0;                          // N - 2
  std::vector<std::vector<std::int64_t>> rays;  // rays[i] = e_i, one per column

  friend bool operator==(const RaySet&, const RaySet&) = default;
};

struct MaximalConeSet {
  // Each cone lists its N - 2 ray indices in increasing order.
  std::vector<std::vector<std::size_t>> cones;
};

namespace detail {

template <class Int>
Matrix<Int> weight_matrix_of(const WeightMatrix& w) {
  Matrix<Int> m(2, w.size());
  for (std::size_t i = 0; i < w.size(); ++i) m(0, i) = Int(w.a(i)), m(1, i) = Int(w.b(i));
  return m;
}

template <class Int>
RaySet kernel_rays(const WeightMatrix& w) {
  const std::size_t n = w.size();
  Matrix<Int> k = integer_kernel(weight_matrix_of<Int>(w));
  if (k.rows() != n - 2) throw fan_error("weight matrix does not have rank two");
  const std::size_t d = n - 2;

  RaySet out;
  out.dim = d;
  out.rays.assign(n, std::vector<std::int64_t>(d));
  for (std::size_t i = 0; i < n; ++i) {
    Int g = 0;
    for (std::size_t r = 0; r < d; ++r) g = gcd_of(g, k(r, i));
    if (g != Int(1)) throw fan_error("ray e_" + std::to_string(i + 1) + " is not primitive");
    for (std::size_t r = 0; r < d; ++r) out.rays[i][r] = to_i64(k(r, i));
  }
  std::set<std::vector<std::int64_t>> seen(out.rays.begin(), out.rays.end());
  if (seen.size() != n) throw fan_error("rays are not pairwise distinct");

  // The rays must generate the whole lattice Z^(N-2).
  for (const Int& inv : smith_form(k).invariants)
    if (inv != Int(1)) throw fan_error("rays do not span the lattice");
  return out;
}

template <class Int>
Matrix<Int> cone_generators(const RaySet& rays, const std::vector<std::size_t>& cone) {
  Matrix<Int> g(rays.dim, cone.size());
  for (std::size_t c = 0; c < cone.size(); ++c)
    for (std::size_t r = 0; r < rays.dim; ++r) g(r, c) = Int(rays.rays[cone[c]][r]);
  return g;
}

}  // namespace detail

/// Rays e_1..e_N: the columns of a Hermite-normal-form basis of the integer
/// kernel of w. Throws fan_error if a ray is imprimitive, two rays coincide,
/// or the rays fail to span Z^(N-2).
inline RaySet kernel_rays(const StandardWeightMatrix& w) {
  return with_widening([&]<class Int>() { return detail::kernel_rays<Int>(w.matrix()); });
}

/// Maximal cones: complements of the pairs {i, j} such that (a, b) is a
/// strictly positive combination of columns i and j.
inline MaximalConeSet maximal_cones(const StandardWeightMatrix& sw) {
  const WeightMatrix& w = sw.matrix();
  return with_widening([&]<class Int>() {
    const std::size_t n = w.size();
    Int sa = 0, sb = 0;
    for (std::size_t i = 0; i < n; ++i) sa += Int(w.a(i)), sb += Int(w.b(i));
    MaximalConeSet out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Int det = Int(w.a(i)) * Int(w.b(j)) - Int(w.b(i)) * Int(w.a(j));
        if (det == Int(0)) continue;
        // (a, b) = x D_i + y D_j with x = |w D_j| / det, y = |D_i w| / det
        Int x_num = sa * Int(w.b(j)) - sb * Int(w.a(j));
        Int y_num = Int(w.a(i)) * sb - Int(w.b(i)) * sa;
        int s = sign_of(det);
        if (sign_of(x_num) != s || sign_of(y_num) != s) continue;
        std::vector<std::size_t> cone;
        for (std::size_t k = 0; k < n; ++k)
          if (k != i && k != j) cone.push_back(k);
        out.cones.push_back(std::move(cone));
      }
    return out;
  });
}

/// Determinant of the generators of one cone.
inline std::int64_t cone_determinant(const RaySet& rays, const std::vector<std::size_t>& cone) {
  return with_widening([&]<class Int>() { return to_i64(determinant(detail::cone_generators<Int>(rays, cone))); });
}

inline bool is_smooth(const StandardWeightMatrix& w) {
  RaySet rays = kernel_rays(w);
  for (const auto& cone : maximal_cones(w).cones) {
    auto d = cone_determinant(rays, cone);
    if (d != 1 && d != -1) return false;
  }
  return true;
}

}  // namespace terminal_fano
