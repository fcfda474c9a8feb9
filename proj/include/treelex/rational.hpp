#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treelex/errors.hpp"
#include "treelex/numeric.hpp"

namespace treelex {

// A point of [0,1]^n with exact rational coordinates.
struct RationalPoint {
  std::vector<Rat> coords;

  RationalPoint() = default;
  explicit RationalPoint(std::vector<Rat> c) : coords(std::move(c)) {}

  std::size_t dim() const { return coords.size(); }
  const Rat& operator[](std::size_t i) const { return coords[i]; }

  bool operator==(const RationalPoint& o) const { return coords == o.coords; }
  bool operator!=(const RationalPoint& o) const { return coords != o.coords; }
  bool operator<(const RationalPoint& o) const { return coords < o.coords; }

  bool in_unit_box() const {
    for (const auto& c : coords)
      if (c < 0 || c > 1) return false;
    return true;
  }
};

inline std::string to_string(const Rat& r) {
  std::string s = rat_num(r).str();
  if (rat_den(r) != 1) s += "/" + rat_den(r).str();
  return s;
}

inline std::string to_string(const RationalPoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ", ";
    s += to_string(p[i]);
  }
  return s + ")";
}

// den(v): least common denominator of the (reduced) coordinates.
inline Int den(const RationalPoint& p) {
  Int l = 1;
  for (const auto& c : p.coords) l = int_lcm(l, rat_den(c));
  return l;
}

// Farey mediant (den(v)*v + den(w)*w) / (den(v) + den(w)).
inline RationalPoint farey_mediant(const RationalPoint& v, const RationalPoint& w) {
  if (v.dim() != w.dim()) fail(Errc::DimensionMismatch, "mediant of points of different dimension");
  if (v == w) fail(Errc::EqualPoints, "mediant requires two distinct endpoints");
  const Rat dv(den(v)), dw(den(w));
  RationalPoint out;
  out.coords.resize(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    out.coords[i] = (dv * v[i] + dw * w[i]) / (dv + dw);
  return out;
}

// ---- exact linear algebra ----------------------------------------------

using RatMatrix = std::vector<std::vector<Rat>>;

inline int matrix_rank(RatMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][col] == 0) continue;
      Rat factor = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

// Affine rank: dimension of the affine hull spanned by the points.
inline int affine_rank(const std::vector<RationalPoint>& pts) {
  if (pts.empty()) return -1;
  RatMatrix m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rat> row(pts[0].dim());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = pts[i][j] - pts[0][j];
    m.push_back(std::move(row));
  }
  return m.empty() ? 0 : matrix_rank(std::move(m));
}

inline bool affinely_independent(const std::vector<RationalPoint>& pts) {
  return affine_rank(pts) == static_cast<int>(pts.size()) - 1;
}

// Barycentric coordinates of p with respect to affinely independent vertices:
// the unique lambda with sum(lambda_i v_i) = p and sum(lambda_i) = 1, or
// nullopt when p is outside the affine hull.
inline std::optional<std::vector<Rat>> barycentric(const std::vector<RationalPoint>& verts,
                                                   const RationalPoint& p) {
  const std::size_t k = verts.size();
  const std::size_t n = p.dim();
  // Rows: n coordinate equations plus the affine constraint.
  RatMatrix m(n + 1, std::vector<Rat>(k + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < k; ++c) m[r][c] = verts[c][r];
    m[r][k] = p[r];
  }
  for (std::size_t c = 0; c < k; ++c) m[n][c] = 1;
  m[n][k] = 1;

  // Gauss-Jordan on the augmented system.
  std::size_t row = 0;
  std::vector<int> pivot_col(k, -1);
  for (std::size_t col = 0; col < k && row < m.size(); ++col) {
    std::size_t pr = row;
    while (pr < m.size() && m[pr][col] == 0) ++pr;
    if (pr == m.size()) continue;
    std::swap(m[row], m[pr]);
    Rat inv = m[row][col];
    for (auto& x : m[row]) x /= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t c = 0; c <= k; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col[col] = static_cast<int>(row);
    ++row;
  }
  // Consistency: any remaining row must be all-zero.
  for (std::size_t r = row; r < m.size(); ++r)
    if (m[r][k] != 0) return std::nullopt;
  std::vector<Rat> lambda(k, Rat(0));
  for (std::size_t c = 0; c < k; ++c)
    if (pivot_col[c] >= 0) lambda[c] = m[pivot_col[c]][k];
  return lambda;
}

inline bool in_convex_hull(const std::vector<RationalPoint>& verts, const RationalPoint& p) {
  auto lambda = barycentric(verts, p);
  if (!lambda) return false;
  for (const auto& l : *lambda)
    if (l < 0) return false;
  return true;
}

// ---- tiny exact LP -------------------------------------------------------
//
// maximize c.x subject to A x = b, x >= 0, via two-phase simplex with Bland's
// rule on exact rationals. Sized for the handful of variables the geometry
// module needs; not a general-purpose solver.
struct LpResult {
  bool feasible = false;
  Rat value;  // optimal objective when feasible (problems used here are bounded)
};

inline LpResult lp_maximize(RatMatrix a, std::vector<Rat> b, std::vector<Rat> c) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? c.size() : a[0].size();
  for (std::size_t r = 0; r < m; ++r)
    if (b[r] < 0) {
      for (auto& x : a[r]) x = -x;
      b[r] = -b[r];
    }

  // Tableau with artificial variables appended; phase 1 drives them to zero.
  const std::size_t total = n + m;
  RatMatrix t(m + 1, std::vector<Rat>(total + 1, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t cidx = 0; cidx < n; ++cidx) t[r][cidx] = a[r][cidx];
    t[r][n + r] = 1;
    t[r][total] = b[r];
    basis[r] = n + r;
  }
  auto pivot = [&](std::size_t pr, std::size_t pc) {
    Rat inv = t[pr][pc];
    for (auto& x : t[pr]) x /= inv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr || t[r][pc] == 0) continue;
      Rat f = t[r][pc];
      for (std::size_t cc = 0; cc <= total; ++cc) t[r][cc] -= f * t[pr][cc];
    }
    basis[pr] = pc;
  };
  auto run = [&](std::size_t limit) {
    while (true) {
      std::size_t pc = total;
      for (std::size_t cidx = 0; cidx < limit; ++cidx)
        if (t[m][cidx] > 0) {
          pc = cidx;
          break;  // Bland: first improving column
        }
      if (pc == total) return true;
      std::size_t pr = m;
      for (std::size_t r = 0; r < m; ++r) {
        if (t[r][pc] <= 0) continue;
        if (pr == m) {
          pr = r;
          continue;
        }
        Rat cur = t[r][total] / t[r][pc];
        Rat best = t[pr][total] / t[pr][pc];
        if (cur < best || (cur == best && basis[r] < basis[pr])) pr = r;
      }
      if (pr == m) return false;  // unbounded
      pivot(pr, pc);
    }
  };

  // Phase 1: maximize -(sum of artificials).
  for (std::size_t cidx = 0; cidx <= total; ++cidx) {
    Rat s(0);
    for (std::size_t r = 0; r < m; ++r) s += t[r][cidx];
    t[m][cidx] = cidx >= n && cidx < total ? s - 1 : s;
  }
  run(n);
  if (t[m][total] != 0) return LpResult{false, Rat(0)};
  // Drive leftover artificial basis variables out where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    std::size_t pc = total;
    for (std::size_t cidx = 0; cidx < n; ++cidx)
      if (t[r][cidx] != 0) {
        pc = cidx;
        break;
      }
    if (pc != total) pivot(r, pc);
  }

  // Phase 2 objective.
  for (std::size_t cidx = 0; cidx <= total; ++cidx) t[m][cidx] = 0;
  for (std::size_t cidx = 0; cidx < n; ++cidx) t[m][cidx] = c[cidx];
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] >= n || t[m][basis[r]] == 0) continue;
    Rat f = t[m][basis[r]];
    for (std::size_t cc = 0; cc <= total; ++cc) t[m][cc] -= f * t[r][cc];
  }
  run(n);
  return LpResult{true, Rat(-t[m][total])};
}

// Do the relative interiors of conv(A) and conv(B) intersect? Encoded as
// max t s.t. sum(alpha_i + t) A_i = sum(beta_j + t) B_j as convex
// combinations; the relative interiors meet iff the optimum is positive.
inline bool relints_intersect(const std::vector<RationalPoint>& A,
                              const std::vector<RationalPoint>& B) {
  const std::size_t k = A.size(), l = B.size(), n = A[0].dim();
  // Variables: alpha (k), beta (l), t. Rows: n point equations + 2 sum rows.
  RatMatrix a(n + 2, std::vector<Rat>(k + l + 1, Rat(0)));
  std::vector<Rat> b(n + 2, Rat(0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < k; ++i) a[r][i] = A[i][r];
    for (std::size_t j = 0; j < l; ++j) a[r][k + j] = -B[j][r];
    Rat tcoef(0);
    for (std::size_t i = 0; i < k; ++i) tcoef += A[i][r];
    for (std::size_t j = 0; j < l; ++j) tcoef -= B[j][r];
    a[r][k + l] = tcoef;
  }
  for (std::size_t i = 0; i < k; ++i) a[n][i] = 1;
  a[n][k + l] = Rat(static_cast<long long>(k));
  b[n] = 1;
  for (std::size_t j = 0; j < l; ++j) a[n + 1][k + j] = 1;
  a[n + 1][k + l] = Rat(static_cast<long long>(l));
  b[n + 1] = 1;

  std::vector<Rat> c(k + l + 1, Rat(0));
  c[k + l] = 1;
  LpResult res = lp_maximize(std::move(a), std::move(b), std::move(c));
  return res.feasible && res.value > 0;
}

}  // namespace treelex
