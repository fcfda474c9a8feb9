#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "treelex/errors.hpp"
#include "treelex/forest.hpp"
#include "treelex/rational.hpp"

namespace treelex {

// An open cell: the relative interior of the simplex spanned by `verts`
// (a single point when verts has one member).
struct GermCell {
  std::string name;
  std::vector<RationalPoint> verts;

  int dim() const { return affine_rank(verts); }
};

// Builds the rooted tree on a cell decomposition around the point d: one
// vertex per cell, an edge between cells whose dimensions differ by one and
// whose lower cell lies in the closure of the higher one, rooted at the cell
// {d}. Enforces pairwise disjointness of the open cells and the uniqueness
// condition: below every cell there is exactly one cell of each smaller
// dimension.
inline RootedForest germ_tree(const std::vector<GermCell>& cells, const RationalPoint& d) {
  if (cells.empty()) fail(Errc::MissingRootCell, "no cells given");
  for (const auto& c : cells) {
    if (c.verts.empty()) fail(Errc::BadInput, "cell '" + c.name + "' has no vertices");
    if (!affinely_independent(c.verts))
      fail(Errc::BadInput, "cell '" + c.name + "' has affinely dependent vertices");
    for (const auto& v : c.verts)
      if (v.dim() != d.dim()) fail(Errc::DimensionMismatch, "cell '" + c.name + "'");
  }
  std::set<std::string> names;
  for (const auto& c : cells)
    if (!names.insert(c.name).second) fail(Errc::DuplicateVertex, "cell '" + c.name + "'");

  int root = -1;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].verts.size() == 1 && cells[i].verts[0] == d) root = static_cast<int>(i);
  if (root < 0) fail(Errc::MissingRootCell, "no cell equals {d}");

  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (relints_intersect(cells[i].verts, cells[j].verts))
        fail(Errc::NotPairwiseDisjoint,
             "cells '" + cells[i].name + "' and '" + cells[j].name + "' overlap");

  // closure(Q) inside closure(P): every vertex of Q in conv(P).
  auto closure_within = [&](const GermCell& q, const GermCell& p) {
    for (const auto& v : q.verts)
      if (!in_convex_hull(p.verts, v)) return false;
    return true;
  };

  // Condition (v): for each cell P and each e < dim(P), exactly one cell of
  // dimension e inside the closure of P.
  for (const auto& p : cells) {
    for (int e = 0; e < p.dim(); ++e) {
      int count = 0;
      for (const auto& q : cells)
        if (q.dim() == e && closure_within(q, p)) ++count;
      if (count != 1)
        fail(Errc::ConditionVViolated, "cell '" + p.name + "' has " + std::to_string(count) +
                                           " cells of dimension " + std::to_string(e) +
                                           " in its closure");
    }
  }

  // Edges: dimension difference one plus closure containment; the parent is
  // the lower-dimensional endpoint.
  std::map<std::string, std::string> parent;
  std::vector<std::pair<int, int>> edges;  // (child, parent) indices
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (i == j) continue;
      if (cells[i].dim() == cells[j].dim() + 1 && closure_within(cells[j], cells[i]))
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  for (const auto& [c, p] : edges) {
    if (parent.count(cells[c].name)) fail(Errc::NotATree, "cell '" + cells[c].name + "' has two parents");
    parent[cells[c].name] = cells[p].name;
  }
  if (parent.count(cells[root].name)) fail(Errc::NotATree, "root cell has a parent");
  if (parent.size() + 1 != cells.size()) fail(Errc::NotATree, "cell graph is not connected");

  std::vector<std::string> vertices;
  for (const auto& c : cells) vertices.push_back(c.name);
  try {
    return RootedForest::validate(vertices, parent, {cells[root].name});
  } catch (const Error& e) {
    fail(Errc::NotATree, e.what());
  }
}

}  // namespace treelex
