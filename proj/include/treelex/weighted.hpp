#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treelex/complex.hpp"
#include "treelex/errors.hpp"
#include "treelex/rational.hpp"

namespace treelex {

// Weighted abstract simplicial complex (V, Sigma, omega). Sigma is stored
// fully subset-closed; input may list maximal sets only. Vertex order is the
// axis order of the canonical realization and is preserved by all operations.
class WeightedComplex {
 public:
  static WeightedComplex validate(const std::vector<std::string>& vertices,
                                  const std::map<std::string, Int>& weights,
                                  const std::vector<std::vector<std::string>>& sets) {
    WeightedComplex w;
    std::set<std::string> seen;
    for (const auto& v : vertices) {
      if (!seen.insert(v).second) fail(Errc::DuplicateVertex, "vertex '" + v + "' listed twice");
      w.vertices_.push_back(v);
    }
    for (const auto& v : vertices) {
      auto it = weights.find(v);
      if (it == weights.end()) fail(Errc::BadInput, "missing weight for '" + v + "'");
      if (it->second < 1) fail(Errc::BadInput, "weight of '" + v + "' must be >= 1");
      w.weights_[v] = it->second;
    }
    for (const auto& s : sets) {
      if (s.empty()) fail(Errc::BadInput, "empty set in Sigma");
      std::vector<std::string> sorted(s);
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(Errc::BadInput, "repeated vertex in a set");
      for (const auto& v : sorted)
        if (!seen.count(v)) fail(Errc::BadInput, "set mentions unknown vertex '" + v + "'");
      w.insert_with_subsets(sorted);
    }
    // Union of Sigma must be the whole vertex set.
    std::set<std::string> covered;
    for (const auto& s : w.sets_)
      for (const auto& v : s) covered.insert(v);
    if (covered.size() != w.vertices_.size())
      fail(Errc::BadInput, "some vertex lies in no set of Sigma");
    return w;
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::map<std::string, Int>& weights() const { return weights_; }
  const std::set<std::vector<std::string>>& sets() const { return sets_; }
  bool empty() const { return vertices_.empty(); }

  Int weight(const std::string& v) const {
    auto it = weights_.find(v);
    if (it == weights_.end()) fail(Errc::UnknownVertex, "'" + v + "'");
    return it->second;
  }

  bool has_set(const std::vector<std::string>& s) const {
    std::vector<std::string> sorted(s);
    std::sort(sorted.begin(), sorted.end());
    return sets_.count(sorted) != 0;
  }

  bool is_maximal(const std::vector<std::string>& s) const {
    std::vector<std::string> sorted(s);
    std::sort(sorted.begin(), sorted.end());
    if (!sets_.count(sorted)) return false;
    for (const auto& t : sets_) {
      if (t.size() <= sorted.size()) continue;
      if (std::includes(t.begin(), t.end(), sorted.begin(), sorted.end())) return false;
    }
    return true;
  }

  std::vector<std::vector<std::string>> maximal_sets() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : sets_)
      if (is_maximal(s)) out.push_back(s);
    return out;
  }

  bool operator==(const WeightedComplex& o) const {
    return vertices_ == o.vertices_ && weights_ == o.weights_ && sets_ == o.sets_;
  }

 private:
  void insert_with_subsets(const std::vector<std::string>& sorted) {
    const std::size_t k = sorted.size();
    if (k > 20) fail(Errc::BadInput, "set too large");
    for (std::size_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<std::string> sub;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) sub.push_back(sorted[i]);
      sets_.insert(std::move(sub));
    }
  }

  friend WeightedComplex binary_subdivision(const WeightedComplex&,
                                            const std::pair<std::string, std::string>&,
                                            const std::string&);
  friend WeightedComplex delete_maximal(const WeightedComplex&, const std::vector<std::string>&);

  std::vector<std::string> vertices_;
  std::map<std::string, Int> weights_;
  std::set<std::vector<std::string>> sets_;
};

// Binary subdivision of the edge {v,w} with new vertex a: every set that
// contains both v and w splits into the two sets with w (resp. v) replaced by
// a; the new weight is omega(v) + omega(w).
inline WeightedComplex binary_subdivision(const WeightedComplex& in,
                                          const std::pair<std::string, std::string>& edge,
                                          const std::string& a) {
  const auto& [v, w] = edge;
  if (!in.has_set({v, w})) fail(Errc::EdgeNotPresent, "{" + v + "," + w + "} not in Sigma");
  if (std::find(in.vertices_.begin(), in.vertices_.end(), a) != in.vertices_.end())
    fail(Errc::NameCollision, "'" + a + "' already a vertex");

  WeightedComplex out;
  out.vertices_ = in.vertices_;
  out.vertices_.push_back(a);
  out.weights_ = in.weights_;
  out.weights_[a] = in.weight(v) + in.weight(w);

  for (const auto& s : in.sets_) {
    const bool has_v = std::binary_search(s.begin(), s.end(), v);
    const bool has_w = std::binary_search(s.begin(), s.end(), w);
    if (has_v && has_w) {
      for (const auto& drop : {v, w}) {
        std::vector<std::string> t;
        for (const auto& x : s)
          if (x != drop) t.push_back(x);
        t.push_back(a);
        std::sort(t.begin(), t.end());
        out.insert_with_subsets(t);
      }
    } else {
      out.sets_.insert(s);
    }
  }
  return out;
}

// Deletion of a maximal set; vertices left in no set are dropped from V
// (and from omega), keeping the union invariant.
inline WeightedComplex delete_maximal(const WeightedComplex& in,
                                      const std::vector<std::string>& m) {
  std::vector<std::string> sorted(m);
  std::sort(sorted.begin(), sorted.end());
  if (!in.sets_.count(sorted)) fail(Errc::NotPresent, "set not in Sigma");
  if (!in.is_maximal(sorted)) fail(Errc::NotMaximal, "set has a proper superset in Sigma");

  WeightedComplex out;
  out.sets_ = in.sets_;
  out.sets_.erase(sorted);
  std::set<std::string> covered;
  for (const auto& s : out.sets_)
    for (const auto& v : s) covered.insert(v);
  for (const auto& v : in.vertices_)
    if (covered.count(v)) {
      out.vertices_.push_back(v);
      out.weights_[v] = in.weights_.at(v);
    }
  return out;
}

// Canonical realization: vertex v_i goes to e_i / omega(v_i) in [0,1]^n.
struct Realization {
  GeometricComplex complex;
  std::map<std::string, RationalPoint> iota;
};

inline Realization canonical_realization(const WeightedComplex& w) {
  const std::size_t n = w.vertices().size();
  Realization out;
  std::map<std::string, RationalPoint> iota;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = w.vertices()[i];
    RationalPoint p;
    p.coords.assign(n, Rat(0));
    p.coords[i] = Rat(Int(1), w.weight(name));
    iota[name] = std::move(p);
  }
  std::vector<Simplex> simplexes;
  for (const auto& s : w.sets()) {
    std::vector<RationalPoint> verts;
    for (const auto& v : s) verts.push_back(iota.at(v));
    simplexes.push_back(Simplex(std::move(verts)));
  }
  out.complex = GeometricComplex::from_simplexes(simplexes, static_cast<int>(n));
  out.iota = std::move(iota);
  return out;
}

// ---- stellar scripts -----------------------------------------------------

struct StellarStep {
  enum class Kind { Subdivide, Delete, Identity };
  Kind kind = Kind::Identity;
  std::pair<std::string, std::string> edge;  // Subdivide
  std::string new_name;                      // Subdivide
  std::vector<std::string> target;           // Delete

  static StellarStep subdivide(std::string v, std::string w, std::string a) {
    StellarStep s;
    s.kind = Kind::Subdivide;
    s.edge = {std::move(v), std::move(w)};
    s.new_name = std::move(a);
    return s;
  }
  static StellarStep del(std::vector<std::string> m) {
    StellarStep s;
    s.kind = Kind::Delete;
    s.target = std::move(m);
    return s;
  }
  static StellarStep identity() { return StellarStep{}; }
};

using StellarScript = std::vector<StellarStep>;

// One state of the abstract/geometric lockstep. The geometric complex always
// lives in the ambient space of the initial realization.
struct ScriptState {
  WeightedComplex abstract;
  GeometricComplex geometric;
  std::map<std::string, RationalPoint> iota;
};

namespace detail {
inline GeometricComplex transfer(const WeightedComplex& w,
                                 const std::map<std::string, RationalPoint>& iota,
                                 int ambient) {
  std::vector<Simplex> simplexes;
  for (const auto& s : w.sets()) {
    std::vector<RationalPoint> verts;
    for (const auto& v : s) verts.push_back(iota.at(v));
    simplexes.push_back(Simplex(std::move(verts)));
  }
  return GeometricComplex::from_simplexes(simplexes, ambient);
}
}  // namespace detail

// Applies a stellar script, maintaining the weighted abstract complex and its
// geometric realization in lockstep: a binary subdivision realizes as the
// Farey blow-up at the mediant of the realized edge, a deletion removes the
// realized maximal simplex, identity changes nothing. Returns all states,
// the initial one first. The blow-up route and the re-transferred abstract
// side are compared at every subdivision; divergence is a hard error.
inline std::vector<ScriptState> apply_stellar_script(const WeightedComplex& w0,
                                                     const StellarScript& script) {
  std::vector<ScriptState> states;
  Realization r0 = canonical_realization(w0);
  const int ambient = static_cast<int>(w0.vertices().size());
  states.push_back(ScriptState{w0, r0.complex, r0.iota});

  for (std::size_t i = 0; i < script.size(); ++i) {
    const StellarStep& step = script[i];
    const ScriptState& cur = states.back();
    try {
      switch (step.kind) {
        case StellarStep::Kind::Identity:
          states.push_back(cur);
          break;
        case StellarStep::Kind::Subdivide: {
          WeightedComplex next = binary_subdivision(cur.abstract, step.edge, step.new_name);
          const RationalPoint& pv = cur.iota.at(step.edge.first);
          const RationalPoint& pw = cur.iota.at(step.edge.second);
          RationalPoint mediant = farey_mediant(pv, pw);
          GeometricComplex blown = cur.geometric.blow_up(mediant);
          auto iota = cur.iota;
          iota[step.new_name] = mediant;
          if (blown != detail::transfer(next, iota, ambient))
            fail(Errc::LockstepMismatch, "Farey blow-up disagrees with realized subdivision");
          states.push_back(ScriptState{std::move(next), std::move(blown), std::move(iota)});
          break;
        }
        case StellarStep::Kind::Delete: {
          WeightedComplex next = delete_maximal(cur.abstract, step.target);
          std::vector<RationalPoint> verts;
          for (const auto& v : step.target) {
            auto it = cur.iota.find(v);
            if (it == cur.iota.end()) fail(Errc::UnknownVertex, "'" + v + "'");
            verts.push_back(it->second);
          }
          GeometricComplex cut = cur.geometric.erase_simplex(Simplex(std::move(verts)));
          std::map<std::string, RationalPoint> iota;
          for (const auto& v : next.vertices()) iota[v] = cur.iota.at(v);
          if (cut != detail::transfer(next, iota, ambient))
            fail(Errc::LockstepMismatch, "deletion disagrees with realized complex");
          states.push_back(ScriptState{std::move(next), std::move(cut), std::move(iota)});
          break;
        }
      }
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(i) + ": " + e.what());
    }
  }
  return states;
}

}  // namespace treelex
