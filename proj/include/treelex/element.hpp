#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treelex/errors.hpp"
#include "treelex/forest.hpp"
#include "treelex/numeric.hpp"

namespace treelex {

// An element of G(F) = prod_i G(T_i, v_i): one integer per forest vertex.
// Elements interoperate only when their forests are identical; there is no
// implicit coercion across forests.
class TlexElement {
 public:
  TlexElement(ForestPtr forest, std::vector<Int> coords)
      : forest_(std::move(forest)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != forest_->size())
      fail(Errc::ForestMismatch, "coordinate count differs from vertex count");
  }

  const ForestPtr& forest() const { return forest_; }
  const std::vector<Int>& coords() const { return coords_; }
  const Int& at(int idx) const { return coords_.at(idx); }
  const Int& at(const std::string& vertex) const { return coords_.at(forest_->index_of(vertex)); }

  bool operator==(const TlexElement& o) const {
    return *forest_ == *o.forest_ && coords_ == o.coords_;
  }
  bool operator!=(const TlexElement& o) const { return !(*this == o); }

 private:
  ForestPtr forest_;
  std::vector<Int> coords_;
};

namespace detail {
inline void require_same_forest(const TlexElement& a, const TlexElement& b) {
  if (a.forest() == b.forest()) return;  // pointer shortcut
  if (*a.forest() != *b.forest()) fail(Errc::ForestMismatch, "elements live on different forests");
}
}  // namespace detail

inline TlexElement zero(const ForestPtr& f) {
  return TlexElement(f, std::vector<Int>(f->size(), 0));
}

inline TlexElement basis(const ForestPtr& f, const std::string& vertex) {
  std::vector<Int> c(f->size(), 0);
  c[f->index_of(vertex)] = 1;
  return TlexElement(f, std::move(c));
}

inline TlexElement add(const TlexElement& a, const TlexElement& b) {
  detail::require_same_forest(a, b);
  std::vector<Int> c(a.coords());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
  return TlexElement(a.forest(), std::move(c));
}

inline TlexElement neg(const TlexElement& a) {
  std::vector<Int> c(a.coords());
  for (auto& x : c) x = -x;
  return TlexElement(a.forest(), std::move(c));
}

inline TlexElement sub(const TlexElement& a, const TlexElement& b) { return add(a, neg(b)); }

inline TlexElement scale(const Int& n, const TlexElement& a) {
  std::vector<Int> c(a.coords());
  for (auto& x : c) x *= n;
  return TlexElement(a.forest(), std::move(c));
}

// Join and meet per the tree-lexicographic rule: walk down from each root
// through the largest initial segment where the elements agree; at each next
// vertex the larger coordinate hands its whole subtree to the join and the
// smaller one to the meet. Trees of the forest are independent.
namespace detail {
inline void copy_subtree(const RootedForest& f, const std::vector<Int>& g,
                         const std::vector<Int>& h, std::vector<Int>& jo, std::vector<Int>& me,
                         int w, bool g_wins) {
  jo[w] = g_wins ? g[w] : h[w];
  me[w] = g_wins ? h[w] : g[w];
  for (int c : f.children_of(w)) copy_subtree(f, g, h, jo, me, c, g_wins);
}

inline void join_meet_rec(const RootedForest& f, const std::vector<Int>& g,
                          const std::vector<Int>& h, std::vector<Int>& jo,
                          std::vector<Int>& me, int w) {
  if (g[w] == h[w]) {
    jo[w] = me[w] = g[w];
    for (int c : f.children_of(w)) join_meet_rec(f, g, h, jo, me, c);
    return;
  }
  copy_subtree(f, g, h, jo, me, w, g[w] > h[w]);
}
}  // namespace detail

inline std::pair<TlexElement, TlexElement> join_meet(const TlexElement& a, const TlexElement& b) {
  detail::require_same_forest(a, b);
  const RootedForest& f = *a.forest();
  std::vector<Int> jo(f.size()), me(f.size());
  for (int r : f.root_indices())
    detail::join_meet_rec(f, a.coords(), b.coords(), jo, me, r);
  return {TlexElement(a.forest(), std::move(jo)), TlexElement(a.forest(), std::move(me))};
}

inline TlexElement join(const TlexElement& a, const TlexElement& b) {
  return join_meet(a, b).first;
}

inline TlexElement meet(const TlexElement& a, const TlexElement& b) {
  return join_meet(a, b).second;
}

inline bool leq(const TlexElement& a, const TlexElement& b) { return join(a, b) == b; }

inline bool is_positive(const TlexElement& a) {
  return leq(zero(a.forest()), a) && !(a == zero(a.forest()));
}

// One coordinate of an element whose entries depend affinely on an integer
// parameter n: value(n) = slope*n + offset. Comparing two such coordinates at
// n -> +inf is lexicographic comparison of (slope, offset).
struct AsymptoticSign {
  Int slope;
  Int offset;

  bool operator==(const AsymptoticSign& o) const {
    return slope == o.slope && offset == o.offset;
  }
  bool operator<(const AsymptoticSign& o) const {
    return slope < o.slope || (slope == o.slope && offset < o.offset);
  }
};

namespace detail {
// Does n*g <= h hold for all sufficiently large n in the chosen direction?
// Threads the join initial-segment walk over AsymptoticSign pairs: n*g has
// per-vertex pair (dir*g_w, 0) and h has (0, h_w).
inline bool asymp_leq_rec(const RootedForest& f, const std::vector<Int>& g,
                          const std::vector<Int>& h, int dir, int w) {
  AsymptoticSign lhs{dir * g[w], 0};
  AsymptoticSign rhs{0, h[w]};
  if (lhs == rhs) {
    for (int c : f.children_of(w))
      if (!asymp_leq_rec(f, g, h, dir, c)) return false;
    return true;
  }
  return lhs < rhs;
}

inline bool asymp_leq(const TlexElement& g, const TlexElement& h, int dir) {
  const RootedForest& f = *g.forest();
  for (int r : f.root_indices())
    if (!asymp_leq_rec(f, g.coords(), h.coords(), dir, r)) return false;
  return true;
}
}  // namespace detail

// g << h: n*g < h for every integer n. Decided symbolically by comparing
// n*g against h at n -> +inf and n -> -inf; no sampling of n. Strictness
// fails only when both elements are zero (then n*g = h for every n).
inline bool inf_less(const TlexElement& g, const TlexElement& h) {
  detail::require_same_forest(g, h);
  const auto z = zero(g.forest());
  if (g == z && h == z) return false;
  return detail::asymp_leq(g, h, +1) && detail::asymp_leq(g, h, -1);
}

// g is infinitesimal iff g << h for some h. Effective test: g vanishes at
// every root; the witness is then the sum of the root basis elements. The
// characterization is validated against inf_less by the test suite rather
// than assumed.
inline bool is_infinitesimal(const TlexElement& g) {
  const RootedForest& f = *g.forest();
  if (f.empty()) return false;  // the trivial group has no witness
  for (int r : f.root_indices())
    if (g.at(r) != 0) return false;
  return true;
}

inline TlexElement infinitesimal_witness(const TlexElement& g) {
  const RootedForest& f = *g.forest();
  std::vector<Int> c(f.size(), 0);
  for (int r : f.root_indices()) c[r] = 1;
  return TlexElement(g.forest(), std::move(c));
}

// u = sum of root basis elements; a group order-unit whenever the forest is
// nonempty. The empty forest yields zero with the flag set.
struct OrderUnit {
  TlexElement element;
  bool forest_empty;
};

inline OrderUnit group_order_unit(const ForestPtr& f) {
  std::vector<Int> c(f->size(), 0);
  for (int r : f->root_indices()) c[r] = 1;
  return OrderUnit{TlexElement(f, std::move(c)), f->empty()};
}

struct UnitCertificate {
  bool ok;
  Int n;
};

// Certificate for one sample: n = 1 + (largest root coordinate of g), clamped
// to 1. For the canonical unit this always certifies n*u >= g.
inline UnitCertificate order_unit_certificate(const TlexElement& u, const TlexElement& g) {
  detail::require_same_forest(u, g);
  Int m = 0;
  for (int r : g.forest()->root_indices())
    if (g.at(r) > m) m = g.at(r);
  Int n = m + 1;
  if (n < 1) n = 1;
  return UnitCertificate{leq(g, scale(n, u)), n};
}

inline bool is_group_order_unit(const TlexElement& u, const std::vector<TlexElement>& samples,
                                std::vector<Int>* certificates = nullptr) {
  bool ok = true;
  for (const auto& g : samples) {
    auto cert = order_unit_certificate(u, g);
    if (certificates) certificates->push_back(cert.n);
    ok = ok && cert.ok;
  }
  return ok;
}

// Deterministic pseudo-random element: coordinates uniform in [-bound, bound].
inline TlexElement random_element(const ForestPtr& f, std::uint64_t seed, long long bound) {
  SplitMix64 rng(seed);
  std::vector<Int> c(f->size());
  for (auto& x : c) x = bound == 0 ? 0 : Int(rng.range(-bound, bound));
  return TlexElement(f, std::move(c));
}

}  // namespace treelex
