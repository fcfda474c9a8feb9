#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "treelex/complex.hpp"
#include "treelex/errors.hpp"
#include "treelex/rational.hpp"
#include "treelex/weighted.hpp"

namespace treelex {

// One integral affine piece c.x + constant.
struct AffineForm {
  std::vector<Int> coeffs;
  Int constant;

  std::size_t dim() const { return coeffs.size(); }

  Rat eval(const RationalPoint& x) const {
    Rat v(constant);
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += Rat(coeffs[i]) * x[i];
    return v;
  }

  bool operator==(const AffineForm& o) const {
    return coeffs == o.coeffs && constant == o.constant;
  }
  bool operator<(const AffineForm& o) const {
    if (coeffs != o.coeffs) return coeffs < o.coeffs;
    return constant < o.constant;
  }
};

inline AffineForm operator+(const AffineForm& a, const AffineForm& b) {
  AffineForm out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  out.constant += b.constant;
  return out;
}

inline AffineForm operator-(const AffineForm& a) {
  AffineForm out = a;
  for (auto& c : out.coeffs) c = -c;
  out.constant = -out.constant;
  return out;
}

// Element of M([0,1]^n) in max-of-mins normal form: the value at x is the
// maximum over the outer list of the minimum over each inner list. Closed
// under +, v, ^ and negation by purely symbolic rules.
struct PwlFunction {
  int n = 0;
  std::vector<std::vector<AffineForm>> terms;

  void validate() const {
    if (terms.empty()) fail(Errc::BadInput, "empty term list");
    for (const auto& inner : terms) {
      if (inner.empty()) fail(Errc::BadInput, "empty inner term list");
      for (const auto& f : inner)
        if (static_cast<int>(f.dim()) != n) fail(Errc::DimensionMismatch, "affine form arity");
    }
  }

  std::size_t form_count() const {
    std::size_t c = 0;
    for (const auto& inner : terms) c += inner.size();
    return c;
  }

  Rat eval(const RationalPoint& x) const {
    if (static_cast<int>(x.dim()) != n) fail(Errc::DimensionMismatch, "point arity");
    if (!x.in_unit_box()) fail(Errc::OutOfBox, "point outside [0,1]^n");
    return eval_unchecked(x);
  }

  Rat eval_unchecked(const RationalPoint& x) const {
    bool first_outer = true;
    Rat best;
    for (const auto& inner : terms) {
      bool first_inner = true;
      Rat low;
      for (const auto& f : inner) {
        Rat v = f.eval(x);
        if (first_inner || v < low) {
          low = v;
          first_inner = false;
        }
      }
      if (first_outer || low > best) {
        best = low;
        first_outer = false;
      }
    }
    return best;
  }
};

inline PwlFunction pwl_constant(int n, const Int& c) {
  AffineForm f{std::vector<Int>(n, 0), c};
  return PwlFunction{n, {{f}}};
}

inline PwlFunction pwl_projection(int n, int i) {
  std::vector<Int> coeffs(n, 0);
  coeffs.at(i) = 1;
  return PwlFunction{n, {{AffineForm{std::move(coeffs), 0}}}};
}

inline constexpr std::size_t kPwlFormCap = 20000;

namespace detail {
inline void check_dims(const PwlFunction& a, const PwlFunction& b) {
  if (a.n != b.n) fail(Errc::DimensionMismatch, "operands of different arity");
}
inline void check_cap(std::size_t forms) {
  if (forms > kPwlFormCap)
    fail(Errc::SizeOverflow, "result would hold " + std::to_string(forms) + " affine forms");
}
}  // namespace detail

// max(f, g): concatenate the outer lists.
inline PwlFunction pw_join(const PwlFunction& a, const PwlFunction& b) {
  detail::check_dims(a, b);
  detail::check_cap(a.form_count() + b.form_count());
  PwlFunction out{a.n, a.terms};
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

// min(f, g) = max over outer pairs of the merged inner lists.
inline PwlFunction pw_meet(const PwlFunction& a, const PwlFunction& b) {
  detail::check_dims(a, b);
  PwlFunction out{a.n, {}};
  std::size_t forms = 0;
  for (const auto& ia : a.terms)
    for (const auto& ib : b.terms) {
      std::vector<AffineForm> inner = ia;
      inner.insert(inner.end(), ib.begin(), ib.end());
      forms += inner.size();
      detail::check_cap(forms);
      out.terms.push_back(std::move(inner));
    }
  return out;
}

// f + g: min distributes over sums, so inner lists combine by pairwise sums.
inline PwlFunction pw_add(const PwlFunction& a, const PwlFunction& b) {
  detail::check_dims(a, b);
  PwlFunction out{a.n, {}};
  std::size_t forms = 0;
  for (const auto& ia : a.terms)
    for (const auto& ib : b.terms) {
      std::vector<AffineForm> inner;
      inner.reserve(ia.size() * ib.size());
      for (const auto& fa : ia)
        for (const auto& fb : ib) inner.push_back(fa + fb);
      forms += inner.size();
      detail::check_cap(forms);
      out.terms.push_back(std::move(inner));
    }
  return out;
}

// -f: a min-of-maxes, redistributed to max-of-mins by expanding one choice of
// inner index per outer term. Exponential in the worst case; capped.
inline PwlFunction pw_neg(const PwlFunction& a) {
  const std::size_t outer = a.terms.size();
  std::size_t combos = 1;
  for (const auto& inner : a.terms) {
    combos *= inner.size();
    detail::check_cap(combos * outer);
  }
  PwlFunction out{a.n, {}};
  std::vector<std::size_t> choice(outer, 0);
  while (true) {
    std::vector<AffineForm> inner;
    inner.reserve(outer);
    for (std::size_t i = 0; i < outer; ++i) inner.push_back(-a.terms[i][choice[i]]);
    out.terms.push_back(std::move(inner));
    std::size_t i = 0;
    while (i < outer && ++choice[i] == a.terms[i].size()) choice[i++] = 0;
    if (i == outer) break;
  }
  return out;
}

inline PwlFunction pw_sub(const PwlFunction& a, const PwlFunction& b) {
  return pw_add(a, pw_neg(b));
}

// ---- exact one-dimensional analysis along a segment -----------------------

namespace detail {

// Restriction of an affine form to the parametrized segment p + t(q - p).
struct SegForm {
  Rat slope;
  Rat offset;
  Rat eval(const Rat& t) const { return slope * t + offset; }
};

inline SegForm restrict_form(const AffineForm& f, const RationalPoint& p, const RationalPoint& q) {
  Rat slope(0), offset(f.constant);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    slope += Rat(f.coeffs[i]) * (q[i] - p[i]);
    offset += Rat(f.coeffs[i]) * p[i];
  }
  return SegForm{slope, offset};
}

inline RationalPoint lerp(const RationalPoint& p, const RationalPoint& q, const Rat& t) {
  RationalPoint out;
  out.coords.resize(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) out.coords[i] = p[i] + t * (q[i] - p[i]);
  return out;
}

inline std::vector<AffineForm> all_forms(const PwlFunction& f) {
  std::set<AffineForm> dedup;
  for (const auto& inner : f.terms)
    for (const auto& a : inner) dedup.insert(a);
  return {dedup.begin(), dedup.end()};
}

// Parameters in (0,1) where some pair of restricted forms crosses, plus the
// endpoints; f is affine between consecutive values.
inline std::vector<Rat> segment_breaks(const PwlFunction& f, const RationalPoint& p,
                                       const RationalPoint& q) {
  std::vector<AffineForm> forms = all_forms(f);
  std::vector<SegForm> restricted;
  restricted.reserve(forms.size());
  for (const auto& a : forms) restricted.push_back(restrict_form(a, p, q));
  std::set<Rat> ts{Rat(0), Rat(1)};
  for (std::size_t i = 0; i < restricted.size(); ++i)
    for (std::size_t j = i + 1; j < restricted.size(); ++j) {
      Rat ds = restricted[i].slope - restricted[j].slope;
      if (ds == 0) continue;
      Rat t = (restricted[j].offset - restricted[i].offset) / ds;
      if (t > 0 && t < 1) ts.insert(t);
    }
  return {ts.begin(), ts.end()};
}

inline bool convex_on_segment(const PwlFunction& f, const RationalPoint& p,
                              const RationalPoint& q) {
  std::vector<Rat> ts = segment_breaks(f, p, q);
  for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
    Rat eps = std::min(ts[k] - ts[k - 1], ts[k + 1] - ts[k]) / 2;
    Rat mid = f.eval_unchecked(lerp(p, q, ts[k]));
    Rat lo = f.eval_unchecked(lerp(p, q, ts[k] - eps));
    Rat hi = f.eval_unchecked(lerp(p, q, ts[k] + eps));
    if (lo + hi < mid * 2) return false;
  }
  return true;
}

inline bool vanishes_on_segment(const PwlFunction& f, const RationalPoint& p,
                                const RationalPoint& q) {
  for (const Rat& t : segment_breaks(f, p, q))
    if (f.eval_unchecked(lerp(p, q, t)) != 0) return false;
  return true;
}

// ---- exact two-dimensional arrangement ------------------------------------

// a*x + b*y + c, normalized for deduplication.
struct Line {
  Rat a, b, c;
  Rat eval(const RationalPoint& p) const { return a * p[0] + b * p[1] + c; }

  void normalize() {
    Rat lead = a != 0 ? a : (b != 0 ? b : c);
    if (lead == 0) return;
    a /= lead;
    b /= lead;
    c /= lead;
  }
  bool operator<(const Line& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

using Polygon = std::vector<RationalPoint>;

inline Rat polygon_area2(const Polygon& poly) {
  Rat s(0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& u = poly[i];
    const auto& v = poly[(i + 1) % poly.size()];
    s += u[0] * v[1] - v[0] * u[1];
  }
  return s < 0 ? Rat(-s) : s;
}

inline RationalPoint centroid(const Polygon& poly) {
  RationalPoint c;
  c.coords.assign(2, Rat(0));
  for (const auto& v : poly) {
    c.coords[0] += v[0];
    c.coords[1] += v[1];
  }
  Rat k(static_cast<long long>(poly.size()));
  c.coords[0] /= k;
  c.coords[1] /= k;
  return c;
}

// Splits a convex polygon by a line into the closed halves, dropping
// degenerate pieces.
inline std::pair<Polygon, Polygon> split_polygon(const Polygon& poly, const Line& line) {
  Polygon pos, neg;
  const std::size_t k = poly.size();
  for (std::size_t i = 0; i < k; ++i) {
    const RationalPoint& cur = poly[i];
    const RationalPoint& nxt = poly[(i + 1) % k];
    Rat sc = line.eval(cur), sn = line.eval(nxt);
    if (sc >= 0) pos.push_back(cur);
    if (sc <= 0) neg.push_back(cur);
    if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
      Rat t = sc / (sc - sn);
      RationalPoint x = lerp(cur, nxt, t);
      pos.push_back(x);
      neg.push_back(x);
    }
  }
  auto clean = [](Polygon& p) {
    if (p.size() < 3 || polygon_area2(p) == 0) p.clear();
  };
  clean(pos);
  clean(neg);
  return {pos, neg};
}

// Cells of the restriction of the difference-line arrangement of f to the
// triangle; f is affine on every cell. Vertices of adjacent cells are aligned
// by inserting every arrangement vertex that lies on a cell edge.
inline std::vector<Polygon> arrangement_cells(const PwlFunction& f, const Polygon& triangle) {
  std::vector<AffineForm> forms = all_forms(f);
  std::set<Line> lines;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      Line l{Rat(forms[i].coeffs[0] - forms[j].coeffs[0]),
             Rat(forms[i].coeffs[1] - forms[j].coeffs[1]),
             Rat(forms[i].constant - forms[j].constant)};
      if (l.a == 0 && l.b == 0) continue;
      l.normalize();
      lines.insert(l);
    }

  std::vector<Polygon> cells{triangle};
  for (const auto& line : lines) {
    std::vector<Polygon> next;
    for (const auto& cell : cells) {
      bool strict_pos = false, strict_neg = false;
      for (const auto& v : cell) {
        Rat s = line.eval(v);
        strict_pos = strict_pos || s > 0;
        strict_neg = strict_neg || s < 0;
      }
      if (strict_pos && strict_neg) {
        auto [pos, neg] = split_polygon(cell, line);
        if (!pos.empty()) next.push_back(std::move(pos));
        if (!neg.empty()) next.push_back(std::move(neg));
      } else {
        next.push_back(cell);
      }
    }
    cells = std::move(next);
  }

  // Align shared edges: insert every cell vertex lying strictly inside an
  // edge of another cell.
  std::set<RationalPoint> all_verts;
  for (const auto& c : cells)
    for (const auto& v : c) all_verts.insert(v);
  auto between = [](const RationalPoint& u, const RationalPoint& v, const RationalPoint& w) {
    // w strictly between u and v (collinear)?
    Rat cross = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0]);
    if (cross != 0) return false;
    Rat dot = (w[0] - u[0]) * (v[0] - w[0]) + (w[1] - u[1]) * (v[1] - w[1]);
    return dot > 0;
  };
  for (auto& cell : cells) {
    Polygon refined;
    const std::size_t k = cell.size();
    for (std::size_t i = 0; i < k; ++i) {
      const RationalPoint& u = cell[i];
      const RationalPoint& v = cell[(i + 1) % k];
      refined.push_back(u);
      std::vector<RationalPoint> mid;
      for (const auto& w : all_verts)
        if (w != u && w != v && between(u, v, w)) mid.push_back(w);
      std::sort(mid.begin(), mid.end(), [&](const RationalPoint& x, const RationalPoint& y) {
        Rat dx = (x[0] - u[0]) * (v[0] - u[0]) + (x[1] - u[1]) * (v[1] - u[1]);
        Rat dy = (y[0] - u[0]) * (v[0] - u[0]) + (y[1] - u[1]) * (v[1] - u[1]);
        return dx < dy;
      });
      for (auto& w : mid) refined.push_back(std::move(w));
    }
    cell = std::move(refined);
  }
  return cells;
}

inline bool convex_on_triangle(const PwlFunction& f, const Polygon& triangle) {
  std::vector<Polygon> cells = arrangement_cells(f, triangle);

  struct Facet {
    std::vector<int> cells;
  };
  std::map<std::pair<RationalPoint, RationalPoint>, Facet> facets;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Polygon& cell = cells[ci];
    for (std::size_t i = 0; i < cell.size(); ++i) {
      RationalPoint u = cell[i], v = cell[(i + 1) % cell.size()];
      if (v < u) std::swap(u, v);
      facets[{u, v}].cells.push_back(static_cast<int>(ci));
    }
  }

  for (const auto& [edge, facet] : facets) {
    if (facet.cells.size() != 2) continue;  // boundary edge
    const auto& [u, v] = edge;
    RationalPoint m;
    m.coords = {(u[0] + v[0]) / 2, (u[1] + v[1]) / 2};
    Line along{v[1] - u[1], u[0] - v[0], Rat(0)};
    along.c = -(along.a * u[0] + along.b * u[1]);

    Rat eps;  // how far the midpoint may move along the normal inside a cell
    bool eps_set = false;
    int sides[2] = {0, 0};
    for (int s = 0; s < 2; ++s) {
      const Polygon& cell = cells[facet.cells[s]];
      RationalPoint c = centroid(cell);
      Rat sc = along.eval(c);
      sides[s] = sc > 0 ? 1 : -1;
      for (std::size_t i = 0; i < cell.size(); ++i) {
        Line g;  // edge line of the cell
        const RationalPoint& a = cell[i];
        const RationalPoint& b = cell[(i + 1) % cell.size()];
        g.a = b[1] - a[1];
        g.b = a[0] - b[0];
        g.c = -(g.a * a[0] + g.b * a[1]);
        Rat gm = g.eval(m);
        if (gm == 0) continue;  // the facet line itself
        // moving m by t*sides[s]*(along.a, along.b): g changes at rate r
        Rat r = (g.a * along.a + g.b * along.b) * sides[s];
        if (r == 0) continue;
        if ((gm > 0 && r < 0) || (gm < 0 && r > 0)) {
          Rat bound = -gm / r;
          if (bound < 0) bound = -bound;
          if (!eps_set || bound < eps) {
            eps = bound;
            eps_set = true;
          }
        }
      }
    }
    if (sides[0] == sides[1]) fail(Errc::InvalidComplex, "facet cells on one side");
    if (!eps_set) eps = Rat(1);
    eps /= 2;

    RationalPoint q1, q2;
    q1.coords = {m[0] + eps * along.a * sides[0], m[1] + eps * along.b * sides[0]};
    q2.coords = {m[0] + eps * along.a * sides[1], m[1] + eps * along.b * sides[1]};
    if (f.eval_unchecked(q1) + f.eval_unchecked(q2) < f.eval_unchecked(m) * 2) return false;
  }
  return true;
}

}  // namespace detail

// Exact convexity of f restricted to a rational simplex, dimensions 1 and 2
// only. Uses the difference-line arrangement: f is affine on each cell, so
// convexity reduces to exact midpoint tests across interior facets.
inline bool convex_check(const PwlFunction& f, const Simplex& s) {
  f.validate();
  if (f.n > 2) fail(Errc::UnsupportedDimension, "convex_check supports n <= 2");
  for (const auto& v : s.verts)
    if (static_cast<int>(v.dim()) != f.n) fail(Errc::DimensionMismatch, "simplex arity");
  if (!affinely_independent(s.verts)) fail(Errc::BadInput, "degenerate simplex");
  switch (s.dim()) {
    case 0:
      return true;
    case 1:
      return detail::convex_on_segment(f, s.verts[0], s.verts[1]);
    case 2:
      return detail::convex_on_triangle(f, {s.verts[0], s.verts[1], s.verts[2]});
    default:
      fail(Errc::UnsupportedDimension, "simplex dimension exceeds 2");
  }
}

// Exact test of f == 0 on the support of K (n <= 2): every simplex is refined
// by the difference arrangement, where f is affine and hence vanishes iff it
// vanishes on the refinement's vertices.
inline bool vanishes_on(const PwlFunction& f, const GeometricComplex& k) {
  f.validate();
  if (f.n > 2) fail(Errc::UnsupportedDimension, "vanishes_on supports n <= 2");
  if (k.ambient_dim() != f.n) fail(Errc::DimensionMismatch, "complex ambient arity");
  for (const auto& s : k.maximal_simplexes()) {
    switch (s.dim()) {
      case 0:
        if (f.eval_unchecked(s.verts[0]) != 0) return false;
        break;
      case 1:
        if (!detail::vanishes_on_segment(f, s.verts[0], s.verts[1])) return false;
        break;
      case 2: {
        auto cells = detail::arrangement_cells(f, {s.verts[0], s.verts[1], s.verts[2]});
        for (const auto& cell : cells)
          for (const auto& v : cell)
            if (f.eval_unchecked(v) != 0) return false;
        break;
      }
      default:
        fail(Errc::UnsupportedDimension, "simplex dimension exceeds 2");
    }
  }
  return true;
}

// Finite-depth ideal membership: vanishing on |Delta_i| certifies membership;
// a negative answer at one depth certifies nothing (membership is existential
// over all depths).
inline bool ideal_member_at_depth(const PwlFunction& f, const std::vector<ScriptState>& steps,
                                  std::size_t i) {
  if (i >= steps.size()) fail(Errc::BadInput, "depth beyond the computed steps");
  return vanishes_on(f, steps[i].geometric);
}

}  // namespace treelex
