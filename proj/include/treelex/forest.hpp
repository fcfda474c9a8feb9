#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treelex/errors.hpp"

namespace treelex {

// A finite rooted forest over opaque string vertex identifiers. Vertices are
// stored in a canonical order (roots in their given order, then depth-first
// with children sorted by name) so that two forests with equal content index
// their vertices identically. Immutable after validation.
class RootedForest {
 public:
  RootedForest() = default;  // the empty forest (trivial group direction)

  static RootedForest validate(const std::vector<std::string>& vertices,
                               const std::map<std::string, std::string>& parent,
                               const std::vector<std::string>& roots) {
    std::set<std::string> seen;
    for (const auto& v : vertices) {
      if (!seen.insert(v).second) fail(Errc::DuplicateVertex, "vertex '" + v + "' listed twice");
    }
    for (const auto& [c, p] : parent) {
      if (!seen.count(c)) fail(Errc::DanglingParent, "child '" + c + "' is not a vertex");
      if (!seen.count(p)) fail(Errc::DanglingParent, "parent '" + p + "' is not a vertex");
    }
    std::set<std::string> root_set;
    for (const auto& r : roots) {
      if (!seen.count(r)) fail(Errc::RootMismatch, "root '" + r + "' is not a vertex");
      if (!root_set.insert(r).second) fail(Errc::RootMismatch, "root '" + r + "' listed twice");
      if (parent.count(r)) fail(Errc::RootMismatch, "root '" + r + "' has a parent");
    }
    for (const auto& v : vertices) {
      if (!parent.count(v) && !root_set.count(v))
        fail(Errc::RootMismatch, "parentless vertex '" + v + "' missing from roots");
    }
    // Every vertex must reach a root through finitely many parent steps.
    for (const auto& v : vertices) {
      std::set<std::string> path;
      std::string cur = v;
      while (parent.count(cur)) {
        if (!path.insert(cur).second) fail(Errc::CycleDetected, "parent cycle through '" + cur + "'");
        cur = parent.at(cur);
      }
      if (!root_set.count(cur)) fail(Errc::CycleDetected, "vertex '" + v + "' reaches no root");
    }

    RootedForest f;
    std::map<std::string, std::vector<std::string>> kids;
    for (const auto& [c, p] : parent) kids[p].push_back(c);
    for (auto& [p, ks] : kids) std::sort(ks.begin(), ks.end());

    // Canonical vertex order: DFS from each root, children by name.
    std::vector<std::pair<std::string, int>> stack;  // (vertex, parent index)
    for (auto rit = roots.rbegin(); rit != roots.rend(); ++rit) stack.push_back({*rit, -1});
    while (!stack.empty()) {
      auto [v, pidx] = stack.back();
      stack.pop_back();
      int idx = static_cast<int>(f.names_.size());
      f.names_.push_back(v);
      f.index_[v] = idx;
      f.parent_.push_back(pidx);
      f.children_.emplace_back();
      if (pidx >= 0) f.children_[pidx].push_back(idx);
      if (pidx < 0) f.root_idx_.push_back(idx);
      auto it = kids.find(v);
      if (it != kids.end())
        for (auto kit = it->second.rbegin(); kit != it->second.rend(); ++kit)
          stack.push_back({*kit, idx});
    }
    f.depth_.assign(f.names_.size(), 0);
    f.tree_.assign(f.names_.size(), 0);
    for (std::size_t i = 0; i < f.names_.size(); ++i) {
      if (f.parent_[i] >= 0) {
        f.depth_[i] = f.depth_[f.parent_[i]] + 1;
        f.tree_[i] = f.tree_[f.parent_[i]];
      } else {
        f.tree_[i] = static_cast<int>(std::find(f.root_idx_.begin(), f.root_idx_.end(),
                                                static_cast<int>(i)) -
                                      f.root_idx_.begin());
      }
    }
    return f;
  }

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<int>& root_indices() const { return root_idx_; }

  std::vector<std::string> root_names() const {
    std::vector<std::string> out;
    for (int r : root_idx_) out.push_back(names_[r]);
    return out;
  }

  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) fail(Errc::UnknownVertex, "'" + name + "'");
    return it->second;
  }

  bool has_vertex(const std::string& name) const { return index_.count(name) != 0; }
  const std::string& name_of(int idx) const { return names_.at(idx); }
  int parent_of(int idx) const { return parent_.at(idx); }
  const std::vector<int>& children_of(int idx) const { return children_.at(idx); }
  int depth_of(int idx) const { return depth_.at(idx); }
  int tree_of(int idx) const { return tree_.at(idx); }

  std::map<std::string, std::string> parent_map() const {
    std::map<std::string, std::string> out;
    for (int i = 0; i < size(); ++i)
      if (parent_[i] >= 0) out[names_[i]] = names_[parent_[i]];
    return out;
  }

  // T_w: all vertices whose path to the root passes through w.
  std::vector<int> subtree_indices(int w) const {
    std::vector<int> out, stack{w};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out.push_back(v);
      for (int c : children_[v]) stack.push_back(c);
    }
    return out;
  }

  std::set<std::string> subtree(const std::string& w) const {
    std::set<std::string> out;
    for (int i : subtree_indices(index_of(w))) out.insert(names_[i]);
    return out;
  }

  // N(T'): the child frontier of an initial segment of the tree rooted at
  // `root`. The empty segment yields {root}.
  std::set<std::string> next_vertices(const std::string& root,
                                      const std::set<std::string>& seg) const {
    int r = index_of(root);
    if (parent_[r] >= 0) fail(Errc::UnknownVertex, "'" + root + "' is not a root");
    if (seg.empty()) return {root};
    std::set<int> seg_idx;
    for (const auto& v : seg) {
      int i = index_of(v);
      if (tree_[i] != tree_[r])
        fail(Errc::NotInitialSegment, "'" + v + "' lies in a different tree");
      seg_idx.insert(i);
    }
    for (int i : seg_idx) {
      if (parent_[i] >= 0 && !seg_idx.count(parent_[i]))
        fail(Errc::NotInitialSegment, "'" + names_[i] + "' present without its parent");
    }
    std::set<std::string> out;
    for (int i : seg_idx)
      for (int c : children_[i])
        if (!seg_idx.count(c)) out.insert(names_[c]);
    return out;
  }

  // Canonical AHU-style encoding: equal strings exactly for isomorphic rooted
  // forests (as multisets of rooted trees). Label-free by construction.
  std::string ahu_canonical() const {
    std::vector<std::string> codes;
    for (int r : root_idx_) codes.push_back(ahu_code(r));
    std::sort(codes.begin(), codes.end());
    std::string out;
    for (const auto& c : codes) out += c;
    return out;
  }

  bool operator==(const RootedForest& o) const {
    return names_ == o.names_ && parent_ == o.parent_ && root_idx_ == o.root_idx_;
  }
  bool operator!=(const RootedForest& o) const { return !(*this == o); }

 private:
  std::string ahu_code(int v) const {
    std::vector<std::string> codes;
    for (int c : children_[v]) codes.push_back(ahu_code(c));
    std::sort(codes.begin(), codes.end());
    std::string out = "(";
    for (const auto& c : codes) out += c;
    out += ")";
    return out;
  }

  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<int> parent_;                 // -1 at roots
  std::vector<std::vector<int>> children_;  // sorted by construction order (name order)
  std::vector<int> root_idx_;
  std::vector<int> depth_;
  std::vector<int> tree_;
};

using ForestPtr = std::shared_ptr<const RootedForest>;

inline ForestPtr make_forest(RootedForest f) {
  return std::make_shared<const RootedForest>(std::move(f));
}

inline ForestPtr validate_forest(const std::vector<std::string>& vertices,
                                 const std::map<std::string, std::string>& parent,
                                 const std::vector<std::string>& roots) {
  return make_forest(RootedForest::validate(vertices, parent, roots));
}

// Isomorphism decision with witness: forests are isomorphic iff their
// canonical strings agree; the witness pairs vertices by matching sorted
// child encodings, which preserves parents and maps roots to roots.
inline std::optional<std::map<std::string, std::string>> forest_iso(const RootedForest& a,
                                                                    const RootedForest& b) {
  if (a.ahu_canonical() != b.ahu_canonical()) return std::nullopt;

  // Per-vertex codes, recomputed locally (cheap at library scale).
  auto codes = [](const RootedForest& f) {
    std::vector<std::string> code(f.size());
    // Children precede parents in no particular order; compute by recursion.
    std::function<std::string(int)> rec = [&](int v) -> std::string {
      std::vector<std::string> cs;
      for (int c : f.children_of(v)) cs.push_back(rec(c));
      std::sort(cs.begin(), cs.end());
      std::string out = "(";
      for (const auto& c : cs) out += c;
      out += ")";
      code[v] = out;
      return out;
    };
    for (int r : f.root_indices()) rec(r);
    return code;
  };
  std::vector<std::string> ca = codes(a), cb = codes(b);

  std::map<std::string, std::string> witness;
  std::function<void(int, int)> match = [&](int va, int vb) {
    witness[a.name_of(va)] = b.name_of(vb);
    auto order = [](const std::vector<int>& ch, const std::vector<std::string>& code) {
      std::vector<int> idx(ch);
      std::sort(idx.begin(), idx.end(), [&](int x, int y) { return code[x] < code[y]; });
      return idx;
    };
    auto cha = order(a.children_of(va), ca);
    auto chb = order(b.children_of(vb), cb);
    for (std::size_t i = 0; i < cha.size(); ++i) match(cha[i], chb[i]);
  };
  auto ra = a.root_indices(), rb = b.root_indices();
  std::sort(ra.begin(), ra.end(), [&](int x, int y) { return ca[x] < ca[y]; });
  std::sort(rb.begin(), rb.end(), [&](int x, int y) { return cb[x] < cb[y]; });
  for (std::size_t i = 0; i < ra.size(); ++i) match(ra[i], rb[i]);
  return witness;
}

}  // namespace treelex
