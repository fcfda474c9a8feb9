#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "treelex/errors.hpp"
#include "treelex/rational.hpp"

namespace treelex {

// A rational simplex given by its (affinely independent) vertices. Vertices
// are kept sorted so simplexes compare as sets.
struct Simplex {
  std::vector<RationalPoint> verts;

  Simplex() = default;
  explicit Simplex(std::vector<RationalPoint> v) : verts(std::move(v)) {
    std::sort(verts.begin(), verts.end());
  }

  int dim() const { return static_cast<int>(verts.size()) - 1; }
  bool operator==(const Simplex& o) const { return verts == o.verts; }
  bool operator<(const Simplex& o) const { return verts < o.verts; }

  bool contains(const RationalPoint& p) const { return in_convex_hull(verts, p); }
};

// A finite rational complex in [0,1]^n, stored face-closed: every nonempty
// subset of a member's vertex set is itself a member. This is stronger than
// the facet condition and is preserved by every operation here.
class GeometricComplex {
 public:
  GeometricComplex() = default;

  static GeometricComplex from_simplexes(const std::vector<Simplex>& simplexes,
                                         int ambient_dim) {
    GeometricComplex k;
    k.ambient_ = ambient_dim;
    for (const auto& s : simplexes) k.insert_with_faces(s);
    k.validate();
    return k;
  }

  int ambient_dim() const { return ambient_; }
  const std::set<Simplex>& simplexes() const { return simplexes_; }
  bool empty() const { return simplexes_.empty(); }
  bool has(const Simplex& s) const { return simplexes_.count(s) != 0; }

  std::vector<Simplex> maximal_simplexes() const {
    std::vector<Simplex> out;
    for (const auto& s : simplexes_) {
      bool maximal = true;
      for (const auto& t : simplexes_) {
        if (t.dim() <= s.dim()) continue;
        if (std::includes(t.verts.begin(), t.verts.end(), s.verts.begin(), s.verts.end())) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(s);
    }
    return out;
  }

  // p lies in the support |K|.
  bool supports(const RationalPoint& p) const {
    for (const auto& s : simplexes_)
      if (s.contains(p)) return true;
    return false;
  }

  // Every point of |this| lies in |other| (checked simplexwise: each simplex
  // here must sit inside a single simplex of `other`).
  bool support_within(const GeometricComplex& other) const {
    for (const auto& s : maximal_simplexes()) {
      bool placed = false;
      for (const auto& t : other.simplexes_) {
        bool inside = true;
        for (const auto& v : s.verts)
          if (!t.contains(v)) {
            inside = false;
            break;
          }
        if (inside) {
          placed = true;
          break;
        }
      }
      if (!placed) return false;
    }
    return true;
  }

  // Blow-up at p: every simplex containing p is replaced by the cones
  // conv(F u {p}) over its faces F avoiding p (including the empty face,
  // which contributes the point {p} itself).
  GeometricComplex blow_up(const RationalPoint& p) const {
    if (!supports(p)) fail(Errc::PointOutsideSupport, "blow-up point outside |K|");
    GeometricComplex out;
    out.ambient_ = ambient_;
    for (const auto& s : simplexes_) {
      if (!s.contains(p)) {
        out.simplexes_.insert(s);
        continue;
      }
      const std::size_t k = s.verts.size();
      for (std::size_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<RationalPoint> face;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (1u << i)) face.push_back(s.verts[i]);
        if (!face.empty() && in_convex_hull(face, p)) continue;
        face.push_back(p);
        out.simplexes_.insert(Simplex(std::move(face)));
      }
    }
    out.validate();
    return out;
  }

  GeometricComplex erase_simplex(const Simplex& s) const {
    GeometricComplex out = *this;
    if (!out.simplexes_.erase(s)) fail(Errc::NotPresent, "simplex not in complex");
    return out;
  }

  bool operator==(const GeometricComplex& o) const { return simplexes_ == o.simplexes_; }
  bool operator!=(const GeometricComplex& o) const { return simplexes_ != o.simplexes_; }

  void validate() const {
    for (const auto& s : simplexes_) {
      if (s.verts.empty()) fail(Errc::InvalidComplex, "empty simplex");
      for (const auto& v : s.verts) {
        if (static_cast<int>(v.dim()) != ambient_)
          fail(Errc::InvalidComplex, "vertex dimension differs from ambient space");
        if (!v.in_unit_box()) fail(Errc::InvalidComplex, "vertex outside [0,1]^n");
      }
      if (!affinely_independent(s.verts))
        fail(Errc::InvalidComplex, "simplex vertices affinely dependent");
      // Face closure (implies the facet condition).
      if (s.verts.size() > 1) {
        for (std::size_t skip = 0; skip < s.verts.size(); ++skip) {
          std::vector<RationalPoint> face;
          for (std::size_t i = 0; i < s.verts.size(); ++i)
            if (i != skip) face.push_back(s.verts[i]);
          if (!simplexes_.count(Simplex(std::move(face))))
            fail(Errc::InvalidComplex, "missing facet");
        }
      }
    }
  }

 private:
  void insert_with_faces(const Simplex& s) {
    const std::size_t k = s.verts.size();
    if (k > 20) fail(Errc::InvalidComplex, "simplex too large");
    for (std::size_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<RationalPoint> face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) face.push_back(s.verts[i]);
      simplexes_.insert(Simplex(std::move(face)));
    }
  }

  std::set<Simplex> simplexes_;
  int ambient_ = 0;
};

}  // namespace treelex
