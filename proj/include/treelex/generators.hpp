#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "treelex/complex.hpp"
#include "treelex/element.hpp"
#include "treelex/forest.hpp"
#include "treelex/numeric.hpp"
#include "treelex/parasemifield.hpp"
#include "treelex/pwl.hpp"
#include "treelex/rational.hpp"
#include "treelex/weighted.hpp"

namespace treelex {

// Uniform-ish random rooted forest: vertex i attaches to an earlier vertex or
// becomes a new root. Reaches every forest shape.
inline ForestPtr random_forest(SplitMix64& rng, int max_vertices, int min_vertices = 0) {
  const int n = static_cast<int>(rng.range(min_vertices, max_vertices));
  std::vector<std::string> vertices;
  std::vector<std::string> roots;
  std::map<std::string, std::string> parent;
  for (int i = 0; i < n; ++i) {
    std::string name = "v" + std::to_string(i);
    vertices.push_back(name);
    const int p = static_cast<int>(rng.below(i + 1));
    if (p == i)
      roots.push_back(name);
    else
      parent[name] = vertices[p];
  }
  return validate_forest(vertices, parent, roots);
}

inline TlexElement random_element_with(SplitMix64& rng, const ForestPtr& f, long long bound) {
  return random_element(f, rng.next(), bound);
}

inline GeneratorAssignment random_assignment(SplitMix64& rng, const ForestPtr& f, int arity,
                                             long long bound) {
  std::vector<TlexElement> gens;
  for (int i = 0; i < arity; ++i) gens.push_back(random_element_with(rng, f, bound));
  return GeneratorAssignment(f, std::move(gens));
}

// Relabel every vertex through a random bijection; the result is isomorphic
// by construction.
inline ForestPtr random_relabel(SplitMix64& rng, const RootedForest& f, const std::string& prefix) {
  const int n = f.size();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[static_cast<int>(rng.below(i + 1))]);
  auto new_name = [&](int idx) { return prefix + std::to_string(perm[idx]); };
  std::vector<std::string> vertices;
  std::vector<std::string> roots;
  std::map<std::string, std::string> parent;
  for (int i = 0; i < n; ++i) vertices.push_back(new_name(i));
  for (int r : f.root_indices()) roots.push_back(new_name(r));
  for (int i = 0; i < n; ++i)
    if (f.parent_of(i) >= 0) parent[new_name(i)] = new_name(f.parent_of(i));
  return validate_forest(vertices, parent, roots);
}

// Random weighted abstract complex with 2..max_vertices vertices, weights in
// [1,3]; a few random maximal sets plus singletons covering the rest.
inline WeightedComplex random_weighted_complex(SplitMix64& rng, int max_vertices) {
  const int k = static_cast<int>(rng.range(2, max_vertices));
  std::vector<std::string> vertices;
  std::map<std::string, Int> weights;
  for (int i = 0; i < k; ++i) {
    vertices.push_back("u" + std::to_string(i));
    weights[vertices.back()] = Int(rng.range(1, 3));
  }
  std::vector<std::vector<std::string>> sets;
  std::set<std::string> covered;
  const int set_count = static_cast<int>(rng.range(1, 3));
  for (int s = 0; s < set_count; ++s) {
    const int size = static_cast<int>(rng.range(2, std::min(3, k)));
    std::set<std::string> members;
    while (static_cast<int>(members.size()) < size)
      members.insert(vertices[rng.below(k)]);
    sets.emplace_back(members.begin(), members.end());
    for (const auto& v : members) covered.insert(v);
  }
  for (const auto& v : vertices)
    if (!covered.count(v)) sets.push_back({v});
  return WeightedComplex::validate(vertices, weights, sets);
}

// Random legal stellar script of up to max_len steps against the evolving
// complex. Fresh vertices are named a0, a1, ...
inline StellarScript random_script(SplitMix64& rng, const WeightedComplex& w0, int max_len) {
  StellarScript script;
  WeightedComplex cur = w0;
  int fresh = 0;
  const int len = static_cast<int>(rng.range(0, max_len));
  for (int i = 0; i < len; ++i) {
    std::vector<std::vector<std::string>> edges;
    for (const auto& s : cur.sets())
      if (s.size() == 2) edges.push_back(s);
    auto maximal = cur.maximal_sets();
    const long long kind = rng.range(0, 9);
    if (kind < 4 && !edges.empty()) {
      const auto& e = edges[rng.below(edges.size())];
      std::string name = "a" + std::to_string(fresh++);
      script.push_back(StellarStep::subdivide(e[0], e[1], name));
      cur = binary_subdivision(cur, {e[0], e[1]}, name);
    } else if (kind < 7 && !maximal.empty()) {
      const auto& m = maximal[rng.below(maximal.size())];
      script.push_back(StellarStep::del(m));
      cur = delete_maximal(cur, m);
    } else {
      script.push_back(StellarStep::identity());
    }
  }
  return script;
}

// Convex by construction: a max of random affine forms.
inline PwlFunction random_convex_pwl(SplitMix64& rng, int n, int max_forms, long long bound) {
  PwlFunction f;
  f.n = n;
  const int count = static_cast<int>(rng.range(1, max_forms));
  for (int i = 0; i < count; ++i) {
    AffineForm a;
    for (int c = 0; c < n; ++c) a.coeffs.push_back(Int(rng.range(-bound, bound)));
    a.constant = Int(rng.range(-bound, bound));
    f.terms.push_back({a});
  }
  return f;
}

// Random nondegenerate simplex of the given dimension in [0,1]^n, vertex
// coordinates on a 1/8 grid.
inline Simplex random_simplex(SplitMix64& rng, int n, int dim) {
  while (true) {
    std::vector<RationalPoint> verts;
    for (int i = 0; i <= dim; ++i) {
      RationalPoint p;
      for (int c = 0; c < n; ++c) p.coords.push_back(Rat(rng.range(0, 8), 8));
      verts.push_back(std::move(p));
    }
    if (affinely_independent(verts)) return Simplex(std::move(verts));
  }
}

}  // namespace treelex
