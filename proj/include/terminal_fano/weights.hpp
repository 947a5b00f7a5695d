#pragma once

// Rank-two weight matrices: validation, standard form, canonical keys and
// random sampling.

#include "terminal_fano/integer.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace terminal_fano {

class invalid_matrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 2 x N integer matrix; column i is (a(i), b(i)).
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::vector<std::int64_t> a, std::vector<std::int64_t> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size()) throw invalid_matrix("weight matrix rows have different lengths");
    if (a_.size() < 4) throw invalid_matrix("weight matrix needs at least 4 columns");
  }

  std::size_t size() const { return a_.size(); }
  std::int64_t a(std::size_t i) const { return a_[i]; }
  std::int64_t b(std::size_t i) const { return b_[i]; }
  const std::vector<std::int64_t>& row_a() const { return a_; }
  const std::vector<std::int64_t>& row_b() const { return b_; }

  std::int64_t sum_a() const { return checked_sum(a_); }
  std::int64_t sum_b() const { return checked_sum(b_); }

  WeightMatrix swapped_rows() const { return {b_, a_}; }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  static std::int64_t checked_sum(const std::vector<std::int64_t>& v) {
    CheckedInt s = 0;
    for (auto x : v) s += x;
    return s.value();
  }

  std::vector<std::int64_t> a_;
  std::vector<std::int64_t> b_;
};

/// A weight matrix known to be in standard form: non-negative entries,
/// b_1 = 0 < a_1, a_N < b_N, columns ordered anticlockwise (ties on a ray by
/// increasing norm, then lexicographically).
class StandardWeightMatrix {
 public:
  /// Throws invalid_matrix if w is not in standard form.
  static StandardWeightMatrix from_standard(WeightMatrix w);

  const WeightMatrix& matrix() const { return w_; }
  operator const WeightMatrix&() const { return w_; }  // NOLINT
  std::size_t size() const { return w_.size(); }
  std::int64_t a(std::size_t i) const { return w_.a(i); }
  std::int64_t b(std::size_t i) const { return w_.b(i); }

  friend bool operator==(const StandardWeightMatrix&, const StandardWeightMatrix&) = default;

 private:
  explicit StandardWeightMatrix(WeightMatrix w) : w_(std::move(w)) {}
  friend StandardWeightMatrix standardize(const WeightMatrix&);
  WeightMatrix w_;
};

struct ValidationReport {
  bool columns_nonzero = false;
  bool strictly_convex = false;
  bool q_factorial = false;
  bool picard_rank_two = false;
  bool well_formed = false;
  std::vector<std::size_t> s_plus;   // 0-based columns with a_i*b - b_i*a > 0
  std::vector<std::size_t> s_minus;  // 0-based columns with a_i*b - b_i*a < 0

  bool ok() const { return columns_nonzero && strictly_convex && q_factorial && picard_rank_two && well_formed; }
};

namespace detail {

template <class Int>
struct Column {
  Int x, y;
};

template <class Int>
Int cross(const Column<Int>& u, const Column<Int>& v) {
  return u.x * v.y - u.y * v.x;
}

template <class Int>
int half_plane(const Column<Int>& u) {
  return (u.y > Int(0) || (u.y == Int(0) && u.x > Int(0))) ? 0 : 1;
}

// Anticlockwise angle from the positive horizontal axis; nonzero columns.
template <class Int>
bool angle_less(const Column<Int>& u, const Column<Int>& v) {
  int hu = half_plane(u), hv = half_plane(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) > Int(0);
}

// Total order: angle, then squared norm, then lexicographic.
template <class Int>
bool column_less(const Column<Int>& u, const Column<Int>& v) {
  if (angle_less(u, v)) return true;
  if (angle_less(v, u)) return false;
  Int nu = u.x * u.x + u.y * u.y, nv = v.x * v.x + v.y * v.y;
  if (nu != nv) return nu < nv;
  return std::pair(u.x, u.y) < std::pair(v.x, v.y);
}

template <class Int>
std::vector<Column<Int>> columns_of(const WeightMatrix& w) {
  std::vector<Column<Int>> cols;
  cols.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) cols.push_back({Int(w.a(i)), Int(w.b(i))});
  return cols;
}

// Columns with their index, sorted by angle only.
template <class Int>
std::vector<Column<Int>> distinct_directions(std::vector<Column<Int>> cols) {
  std::sort(cols.begin(), cols.end(), angle_less<Int>);
  std::vector<Column<Int>> dirs;
  for (const auto& c : cols)
    if (dirs.empty() || angle_less(dirs.back(), c)) dirs.push_back(c);
  return dirs;
}

// Index k into dirs such that the anticlockwise gap from dirs[k] to
// dirs[k+1 mod m] exceeds pi; dirs.size() when there is none.
template <class Int>
std::size_t wide_gap(const std::vector<Column<Int>>& dirs) {
  const std::size_t m = dirs.size();
  if (m < 2) return m;
  for (std::size_t k = 0; k < m; ++k)
    if (cross(dirs[k], dirs[(k + 1) % m]) < Int(0)) return k;
  return m;
}

template <class Int>
bool strictly_convex(const WeightMatrix& w) {
  std::vector<Column<Int>> cols;
  for (const auto& c : columns_of<Int>(w))
    if (c.x != Int(0) || c.y != Int(0)) cols.push_back(c);
  if (cols.empty()) return false;
  auto dirs = distinct_directions(cols);
  return dirs.size() == 1 || wide_gap(dirs) < dirs.size();
}

// gcd of the 2x2 minors of the columns, skipping column `skip`.
template <class Int>
Int minor_gcd(const WeightMatrix& w, std::size_t skip) {
  Int g = 0;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == skip) continue;
      g = gcd_of<Int>(g, Int(w.a(i)) * Int(w.b(j)) - Int(w.a(j)) * Int(w.b(i)));
      if (g == Int(1)) return g;
    }
  }
  return g;
}

template <class Int>
ValidationReport validate(const WeightMatrix& w) {
  ValidationReport r;
  const std::size_t n = w.size();
  r.columns_nonzero = true;
  for (std::size_t i = 0; i < n; ++i)
    if (w.a(i) == 0 && w.b(i) == 0) r.columns_nonzero = false;
  r.strictly_convex = strictly_convex<Int>(w);

  Int sa = 0, sb = 0;
  for (std::size_t i = 0; i < n; ++i) sa += Int(w.a(i)), sb += Int(w.b(i));
  r.q_factorial = true;
  for (std::size_t i = 0; i < n; ++i) {
    Int c = Int(w.a(i)) * sb - Int(w.b(i)) * sa;
    if (c > Int(0))
      r.s_plus.push_back(i);
    else if (c < Int(0))
      r.s_minus.push_back(i);
    else
      r.q_factorial = false;
  }
  r.picard_rank_two = r.s_plus.size() + 2 <= n && r.s_minus.size() + 2 <= n;

  r.well_formed = true;
  for (std::size_t d = 0; d < n && r.well_formed; ++d)
    if (minor_gcd<Int>(w, d) != Int(1)) r.well_formed = false;
  return r;
}

template <class Int>
WeightMatrix standardize(const WeightMatrix& w) {
  auto cols = columns_of<Int>(w);
  for (const auto& c : cols)
    if (c.x == Int(0) && c.y == Int(0)) throw invalid_matrix("cannot standardize: zero column");
  auto dirs = distinct_directions(cols);
  if (dirs.size() < 2) throw invalid_matrix("cannot standardize: all columns are parallel");
  const std::size_t k = wide_gap(dirs);
  if (k == dirs.size()) throw invalid_matrix("cannot standardize: columns not in a strictly convex cone");

  // Map the clockwise-most ray onto the positive horizontal axis.
  const auto& first = dirs[(k + 1) % dirs.size()];
  Int g = gcd_of(first.x, first.y);
  Int px = first.x / g, py = first.y / g;
  auto [one, s, t] = ext_gcd(px, py);
  auto apply = [&](const Column<Int>& c) { return Column<Int>{s * c.x + t * c.y, px * c.y - py * c.x}; };
  for (auto& c : cols) c = apply(c);

  // Shear so the anticlockwise-most ray sits strictly above the diagonal.
  auto last = apply(dirs[k]);
  Int shear = -floor_div(last.x, last.y);
  for (auto& c : cols) c.x += shear * c.y;

  std::sort(cols.begin(), cols.end(), column_less<Int>);
  std::vector<std::int64_t> a, b;
  for (const auto& c : cols) a.push_back(to_i64(c.x)), b.push_back(to_i64(c.y));
  return {std::move(a), std::move(b)};
}

}  // namespace detail

inline ValidationReport validate(const WeightMatrix& w) {
  return with_widening([&]<class Int>() { return detail::validate<Int>(w); });
}

/// gcd of all 2x2 minors equals one.
inline bool is_standard(const WeightMatrix& w) {
  return with_widening([&]<class Int>() { return detail::minor_gcd<Int>(w, w.size()) == Int(1); });
}

/// Every column-deleted submatrix is standard.
inline bool is_well_formed(const WeightMatrix& w) {
  return with_widening([&]<class Int>() {
    for (std::size_t d = 0; d < w.size(); ++d)
      if (detail::minor_gcd<Int>(w, d) != Int(1)) return false;
    return true;
  });
}

inline bool is_strictly_convex(const WeightMatrix& w) {
  return with_widening([&]<class Int>() { return detail::strictly_convex<Int>(w); });
}

/// gcd(sum a_i, sum b_i).
inline std::int64_t fano_index(const WeightMatrix& w) {
  return with_widening([&]<class Int>() {
    Int sa = 0, sb = 0;
    for (std::size_t i = 0; i < w.size(); ++i) sa += Int(w.a(i)), sb += Int(w.b(i));
    return to_i64(gcd_of(sa, sb));
  });
}

/// Column permutation plus a determinant-one change of basis putting w into
/// standard form. Throws invalid_matrix when w has a zero column or its
/// columns do not lie in a strictly convex cone.
inline StandardWeightMatrix standardize(const WeightMatrix& w) {
  return StandardWeightMatrix(with_widening([&]<class Int>() { return detail::standardize<Int>(w); }));
}

inline bool is_standard_form(const WeightMatrix& w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.a(i) < 0 || w.b(i) < 0) return false;
  const std::size_t n = w.size();
  if (w.b(0) != 0 || w.a(0) < 1 || w.a(n - 1) >= w.b(n - 1)) return false;
  try {
    return standardize(w).matrix() == w;
  } catch (const invalid_matrix&) {
    return false;
  }
}

inline StandardWeightMatrix StandardWeightMatrix::from_standard(WeightMatrix w) {
  if (!is_standard_form(w)) throw invalid_matrix("weight matrix is not in standard form");
  return StandardWeightMatrix(std::move(w));
}

/// Text form `a_1,...,a_N;b_1,...,b_N`.
inline std::string format_text(const WeightMatrix& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w.a(i));
  }
  out += ';';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w.b(i));
  }
  return out;
}

namespace detail {

inline std::vector<std::int64_t> parse_row(std::string_view s) {
  std::vector<std::int64_t> row;
  std::size_t pos = 0;
  for (;;) {
    std::size_t end = s.find(',', pos);
    std::string_view tok = s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec == std::errc::invalid_argument || p != tok.data() + tok.size())
      throw parse_error("malformed integer '" + std::string(tok) + "'");
    if (ec == std::errc::result_out_of_range) throw parse_error("integer out of range '" + std::string(tok) + "'");
    row.push_back(v);
    if (end == std::string_view::npos) return row;
    pos = end + 1;
  }
}

}  // namespace detail

inline WeightMatrix parse_text(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  auto semi = line.find(';');
  if (semi == std::string_view::npos || line.find(';', semi + 1) != std::string_view::npos)
    throw parse_error("expected exactly one ';' separating the two rows");
  auto a = detail::parse_row(line.substr(0, semi));
  auto b = detail::parse_row(line.substr(semi + 1));
  if (a.size() != b.size()) throw parse_error("rows have different lengths");
  if (a.size() < 4) throw parse_error("need at least 4 columns");
  return {std::move(a), std::move(b)};
}

/// Key shared by every weight matrix of the same variety: the smaller (as
/// text) of the two standard forms reachable with determinant +1 and -1
/// changes of basis.
inline std::string canonical_key(const WeightMatrix& w) {
  std::string k1 = format_text(standardize(w).matrix());
  std::string k2 = format_text(standardize(w.swapped_rows()).matrix());
  return std::min(k1, k2);
}

/// Random standard-form matrix: a_1, b_N uniform on {1..bound}, a_N uniform
/// on {0..b_N-1}, b_1 = 0, all other entries uniform on {0..bound}; columns
/// are then put in anticlockwise order and the draw is repeated until the
/// result is in standard form.
template <class Rng>
StandardWeightMatrix sample_random(std::size_t n, std::int64_t bound, Rng& rng) {
  if (n < 4) throw std::invalid_argument("sample_random: need n >= 4");
  if (bound < 1) throw std::invalid_argument("sample_random: need bound >= 1");
  std::uniform_int_distribution<std::int64_t> entry(0, bound), positive(1, bound);
  for (;;) {
    std::vector<std::int64_t> a(n), b(n);
    a[0] = positive(rng);
    b[0] = 0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      a[j] = entry(rng);
      b[j] = entry(rng);
    }
    b[n - 1] = positive(rng);
    a[n - 1] = std::uniform_int_distribution<std::int64_t>(0, b[n - 1] - 1)(rng);

    bool zero = false;
    std::vector<detail::Column<std::int64_t>> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
      cols[j] = {a[j], b[j]};
      zero = zero || (a[j] == 0 && b[j] == 0);
    }
    if (zero) continue;
    std::sort(cols.begin(), cols.end(), detail::column_less<std::int64_t>);
    for (std::size_t j = 0; j < n; ++j) a[j] = cols[j].x, b[j] = cols[j].y;
    WeightMatrix w(std::move(a), std::move(b));
    if (is_standard_form(w)) return StandardWeightMatrix::from_standard(std::move(w));
  }
}

}  // namespace terminal_fano
