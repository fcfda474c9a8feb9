#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treelex/element.hpp"
#include "treelex/errors.hpp"
#include "treelex/forest.hpp"
#include "treelex/numeric.hpp"

namespace treelex {

// Opaque element of an abstractly presented l-group of known dimension.
using Tuple = std::vector<Int>;

// The black-box surface the reconstruction algorithm is allowed to touch:
// the six abstract operations plus a generating set. Nothing below
// recover_forest may look behind this interface.
class LGroupOps {
 public:
  virtual ~LGroupOps() = default;

  virtual int dimension() const = 0;
  virtual Tuple zero() const = 0;
  virtual Tuple add(const Tuple& a, const Tuple& b) const = 0;
  virtual Tuple neg(const Tuple& a) const = 0;
  virtual Tuple join(const Tuple& a, const Tuple& b) const = 0;
  virtual Tuple meet(const Tuple& a, const Tuple& b) const = 0;
  virtual bool eq(const Tuple& a, const Tuple& b) const = 0;
  virtual const std::vector<Tuple>& gens() const = 0;

  bool leq(const Tuple& a, const Tuple& b) const { return eq(join(a, b), b); }
  bool is_positive(const Tuple& a) const {
    Tuple z = zero();
    return leq(z, a) && !eq(a, z);
  }
};

// An integer shear automorphism of G(F): adds mult * (coordinate at `from`)
// to the coordinate at `to`, where `to` is a strict descendant of `from` in
// the same tree. Such maps preserve the lattice order exactly because the
// target coordinate always lies strictly below the deciding frontier.
struct Shear {
  int from;
  int to;
  long long mult;
};

// G(F) presented through a random coordinate permutation composed with shear
// automorphisms. Generators are the images of all basis elements b(w). The
// hidden forest is carried only so the harness can verify round trips.
class ScrambledPresentation final : public LGroupOps {
 public:
  static ScrambledPresentation scramble(ForestPtr forest, std::uint64_t seed, int shear_count) {
    ScrambledPresentation p;
    p.forest_ = std::move(forest);
    const RootedForest& f = *p.forest_;
    const int n = f.size();
    SplitMix64 rng(seed);

    p.slot_of_.resize(n);
    for (int i = 0; i < n; ++i) p.slot_of_[i] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(p.slot_of_[i], p.slot_of_[static_cast<int>(rng.below(i + 1))]);

    // Candidate shear pairs: (ancestor, strict descendant).
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < n; ++v)
      for (int u : f.subtree_indices(v))
        if (u != v) pairs.emplace_back(v, u);
    for (int s = 0; s < shear_count && !pairs.empty(); ++s) {
      auto [from, to] = pairs[rng.below(pairs.size())];
      long long mult = 0;
      while (mult == 0) mult = rng.range(-3, 3);
      p.shears_.push_back(Shear{from, to, mult});
    }

    for (int slot = 0; slot < n; ++slot) {
      std::vector<Int> b(n, 0);
      b[p.hidden_of_slot(slot)] = 1;
      p.gens_.push_back(p.to_presentation(b));
    }
    return p;
  }

  static ScrambledPresentation from_parts(ForestPtr forest, std::vector<int> slot_of,
                                          std::vector<Shear> shears) {
    ScrambledPresentation p;
    p.forest_ = std::move(forest);
    p.slot_of_ = std::move(slot_of);
    p.shears_ = std::move(shears);
    const int n = p.forest_->size();
    if (static_cast<int>(p.slot_of_.size()) != n)
      fail(Errc::BadInput, "permutation length differs from dimension");
    std::vector<bool> seen(n, false);
    for (int s : p.slot_of_) {
      if (s < 0 || s >= n || seen[s]) fail(Errc::BadInput, "invalid permutation");
      seen[s] = true;
    }
    for (const auto& sh : p.shears_) {
      if (sh.from < 0 || sh.from >= n || sh.to < 0 || sh.to >= n || sh.mult == 0)
        fail(Errc::BadInput, "invalid shear");
      auto sub = p.forest_->subtree_indices(sh.from);
      if (sh.to == sh.from || std::find(sub.begin(), sub.end(), sh.to) == sub.end())
        fail(Errc::BadInput, "shear target must be a strict descendant");
    }
    for (int slot = 0; slot < n; ++slot) {
      std::vector<Int> b(n, 0);
      b[p.hidden_of_slot(slot)] = 1;
      p.gens_.push_back(p.to_presentation(b));
    }
    return p;
  }

  int dimension() const override { return forest_->size(); }
  Tuple zero() const override { return Tuple(forest_->size(), 0); }

  Tuple add(const Tuple& a, const Tuple& b) const override {
    Tuple c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
  }

  Tuple neg(const Tuple& a) const override {
    Tuple c(a);
    for (auto& x : c) x = -x;
    return c;
  }

  Tuple join(const Tuple& a, const Tuple& b) const override { return lattice(a, b, true); }
  Tuple meet(const Tuple& a, const Tuple& b) const override { return lattice(a, b, false); }
  bool eq(const Tuple& a, const Tuple& b) const override { return a == b; }
  const std::vector<Tuple>& gens() const override { return gens_; }

  // Harness-only accessors.
  const RootedForest& hidden_forest() const { return *forest_; }
  const ForestPtr& hidden_forest_ptr() const { return forest_; }
  const std::vector<int>& slot_of() const { return slot_of_; }
  const std::vector<Shear>& shears() const { return shears_; }

  Tuple to_presentation(const std::vector<Int>& hidden) const {
    std::vector<Int> x(hidden);
    for (const auto& s : shears_) x[s.to] += Int(s.mult) * x[s.from];
    Tuple t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t[slot_of_[i]] = x[i];
    return t;
  }

  std::vector<Int> to_hidden(const Tuple& t) const {
    std::vector<Int> x(t.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = t[slot_of_[i]];
    for (auto it = shears_.rbegin(); it != shears_.rend(); ++it)
      x[it->to] -= Int(it->mult) * x[it->from];
    return x;
  }

 private:
  ScrambledPresentation() = default;

  int hidden_of_slot(int slot) const {
    for (int i = 0; i < static_cast<int>(slot_of_.size()); ++i)
      if (slot_of_[i] == slot) return i;
    fail(Errc::BadInput, "slot out of range");
  }

  Tuple lattice(const Tuple& a, const Tuple& b, bool want_join) const {
    TlexElement ga(forest_, to_hidden(a)), gb(forest_, to_hidden(b));
    auto jm = join_meet(ga, gb);
    return to_presentation((want_join ? jm.first : jm.second).coords());
  }

  ForestPtr forest_;
  std::vector<int> slot_of_;  // presentation slot of hidden coordinate i
  std::vector<Shear> shears_;
  std::vector<Tuple> gens_;
};

// Finite fragment of the group: gens and zero closed under one-step
// add/neg/join/meet, iterated `depth` times. Insertion order is deterministic
// (zero, gens, then closure by round) and is the order the greedy selection
// walks. The cap bounds the number of candidates an expansion round may
// generate; exceeding it raises PoolOverflow before the work is done.
struct CandidatePool {
  std::vector<Tuple> elements;
  int depth = 0;
  std::set<Tuple> index;

  bool contains(const Tuple& t) const { return index.count(t) != 0; }

  void insert(const Tuple& t) {
    if (index.insert(t).second) elements.push_back(t);
  }
};

inline constexpr std::size_t kPoolCap = 1200;

inline CandidatePool build_pool(const LGroupOps& ops, int depth, std::size_t cap = kPoolCap) {
  CandidatePool pool;
  pool.depth = depth;
  pool.insert(ops.zero());
  for (const auto& g : ops.gens()) pool.insert(g);

  for (int round = 0; round < depth; ++round) {
    const std::size_t s = pool.elements.size();
    // neg: s, add over i<=j: s(s+1)/2, join/meet over i<j: s(s-1) together.
    const std::size_t predicted = s + s * (s + 1) / 2 + s * (s - 1);
    if (predicted + s > cap)
      fail(Errc::PoolOverflow, "expansion round " + std::to_string(round + 1) +
                                   " would generate about " + std::to_string(predicted) +
                                   " candidates (cap " + std::to_string(cap) + ")");
    std::vector<Tuple> snapshot = pool.elements;
    for (const auto& x : snapshot) pool.insert(ops.neg(x));
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i; j < snapshot.size(); ++j) {
        pool.insert(ops.add(snapshot[i], snapshot[j]));
        if (i != j) {
          pool.insert(ops.join(snapshot[i], snapshot[j]));
          pool.insert(ops.meet(snapshot[i], snapshot[j]));
        }
      }
  }
  return pool;
}

namespace detail {

// Multiples +-2^k g for the rungs of the black-box << ladder, built once per
// element with cumulative doubling so every rung together costs 40 additions.
inline constexpr int kInfRungs[] = {0, 1, 3, 8, 20, 40};
inline constexpr int kInfRungCount = 6;

struct InfLadder {
  Tuple pos[kInfRungCount];
  Tuple neg[kInfRungCount];
  bool is_zero = false;
};

inline InfLadder make_ladder(const LGroupOps& ops, const Tuple& g, const Tuple& z) {
  InfLadder l;
  l.is_zero = ops.eq(g, z);
  Tuple cur = g;
  int doubled = 0;
  for (int r = 0; r < kInfRungCount; ++r) {
    while (doubled < kInfRungs[r]) {
      cur = ops.add(cur, cur);
      ++doubled;
    }
    l.pos[r] = cur;
    l.neg[r] = ops.neg(cur);
  }
  return l;
}

// Black-box test for g << h: (2^k g) v h = h and (-2^k g) v h = h along the
// doubling ladder up to 2^40. Exact for the classified groups whenever
// coordinate magnitudes stay below 2^40, which the pool construction
// guarantees at harness scale; the largest rung runs first so failures exit
// after a single comparison.
inline bool inf_less_bb(const LGroupOps& ops, const InfLadder& g, const Tuple& h, const Tuple& z) {
  if (g.is_zero && ops.eq(h, z)) return false;
  for (int r = kInfRungCount - 1; r >= 0; --r) {
    if (!ops.leq(g.pos[r], h)) return false;
    if (!ops.leq(g.neg[r], h)) return false;
  }
  return true;
}

inline bool inf_less_bb(const LGroupOps& ops, const Tuple& g, const Tuple& h, const Tuple& z) {
  return inf_less_bb(ops, make_ladder(ops, g, z), h, z);
}

struct SelectionScratch {
  std::vector<char> positive;
  std::vector<char> infinitesimal;  // relative to the pool
};

inline SelectionScratch classify(const LGroupOps& ops, const std::vector<Tuple>& pool) {
  SelectionScratch s;
  const Tuple z = ops.zero();
  s.positive.resize(pool.size());
  s.infinitesimal.resize(pool.size());
  // Sum of positive parts: dominates exactly the elements with no coordinate
  // at a root, i.e. the true infinitesimals.
  Tuple universal = z;
  for (const auto& x : pool) universal = ops.add(universal, ops.join(x, z));
  for (std::size_t i = 0; i < pool.size(); ++i)
    s.positive[i] = ops.is_positive(pool[i]) ? 1 : 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    // Pool-relative infinitesimality: some pool member must witness g << h.
    // Anything not below the universal element can have no witness at all,
    // which prunes the scan without changing the answer.
    InfLadder ladder = make_ladder(ops, pool[i], z);
    if (!inf_less_bb(ops, ladder, universal, z)) {
      s.infinitesimal[i] = 0;
      continue;
    }
    char witnessed = 0;
    for (const auto& h : pool) {
      if (inf_less_bb(ops, ladder, h, z)) {
        witnessed = 1;
        break;
      }
    }
    s.infinitesimal[i] = witnessed;
  }
  return s;
}

}  // namespace detail

// Greedy maximal subset of the pool whose members are positive, not
// infinitesimal (within the pool), not a sum of two positive non-infinitesimal
// pool elements, and pairwise satisfy g_i v g_j = g_i + g_j. Walks the pool in
// its deterministic order.
inline std::vector<Tuple> select_B0(const LGroupOps& ops, const CandidatePool& pool) {
  const auto& elems = pool.elements;
  detail::SelectionScratch scratch = detail::classify(ops, elems);

  std::set<Tuple> summands;  // positive, non-infinitesimal pool elements
  std::vector<Tuple> summand_list;
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (scratch.positive[i] && !scratch.infinitesimal[i]) {
      summands.insert(elems[i]);
      summand_list.push_back(elems[i]);
    }

  std::vector<Tuple> accepted;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Tuple& g = elems[i];
    if (!scratch.positive[i]) continue;
    bool disjoint = true;
    for (const auto& a : accepted)
      if (!ops.eq(ops.join(g, a), ops.add(g, a))) {
        disjoint = false;
        break;
      }
    if (!disjoint) continue;
    if (scratch.infinitesimal[i]) continue;
    bool composite = false;
    for (const auto& u : summand_list) {
      Tuple v = ops.add(g, ops.neg(u));
      if (summands.count(v)) {
        composite = true;
        break;
      }
    }
    if (composite) continue;
    accepted.push_back(g);
  }
  if (accepted.empty())
    fail(Errc::EmptySelection, "no positive non-infinitesimal candidates in pool");
  return accepted;
}

namespace detail {

struct RecoverState {
  const LGroupOps& ops;
  Tuple zero;
  int vertex_counter = 0;
  int dimension;
};

struct BuiltTree {
  std::string root;
  std::vector<std::pair<std::string, std::string>> edges;  // (child, parent)
  std::vector<std::string> vertices;
};

inline std::string fresh_name(RecoverState& st) {
  if (st.vertex_counter >= st.dimension)
    fail(Errc::ReconstructionIncomplete, "recovered more vertices than the dimension allows");
  return "w" + std::to_string(st.vertex_counter++);
}

inline std::vector<BuiltTree> recover_level(RecoverState& st, const std::vector<Tuple>& level) {
  bool any_nonzero = false;
  for (const auto& x : level)
    if (!st.ops.eq(x, st.zero)) {
      any_nonzero = true;
      break;
    }
  if (!any_nonzero) return {};

  CandidatePool view;
  view.elements = level;
  for (const auto& x : level) view.index.insert(x);
  std::vector<Tuple> b0 = select_B0(st.ops, view);

  std::vector<InfLadder> ladders;
  ladders.reserve(level.size());
  for (const auto& x : level) ladders.push_back(make_ladder(st.ops, x, st.zero));

  std::vector<BuiltTree> trees;
  for (const auto& g : b0) {
    std::vector<Tuple> sub;
    for (std::size_t i = 0; i < level.size(); ++i)
      if (inf_less_bb(st.ops, ladders[i], g, st.zero)) sub.push_back(level[i]);
    BuiltTree t;
    t.root = fresh_name(st);
    t.vertices.push_back(t.root);
    for (const auto& child : recover_level(st, sub)) {
      t.edges.emplace_back(child.root, t.root);
      for (const auto& e : child.edges) t.edges.push_back(e);
      for (const auto& v : child.vertices) t.vertices.push_back(v);
    }
    trees.push_back(std::move(t));
  }
  return trees;
}

}  // namespace detail

namespace detail {
inline RootedForest recover_from_pool(const LGroupOps& ops, const CandidatePool& pool) {
  RecoverState st{ops, ops.zero(), 0, ops.dimension()};

  std::vector<BuiltTree> trees;
  if (ops.dimension() > 0) trees = recover_level(st, pool.elements);

  std::vector<std::string> vertices, roots;
  std::map<std::string, std::string> parent;
  for (const auto& t : trees) {
    roots.push_back(t.root);
    for (const auto& v : t.vertices) vertices.push_back(v);
    for (const auto& [c, p] : t.edges) parent[c] = p;
  }
  if (static_cast<int>(vertices.size()) != ops.dimension())
    fail(Errc::ReconstructionIncomplete,
         "recovered " + std::to_string(vertices.size()) + " of " +
             std::to_string(ops.dimension()) + " vertices at depth " + std::to_string(pool.depth));
  return RootedForest::validate(vertices, parent, roots);
}
}  // namespace detail

// Recover the hidden rooted forest from a presentation, using only the
// abstract operations. Throws ReconstructionIncomplete when the recovered
// vertex count differs from the dimension (the pool was too shallow).
inline RootedForest recover_forest(const LGroupOps& ops, int depth) {
  return detail::recover_from_pool(ops, build_pool(ops, depth));
}

// Depth ladder: try 2, then 3, then 4; a PoolOverflow falls back to the
// largest depth whose expansion fits under the cap (never below 1).
inline RootedForest recover_forest_auto(const LGroupOps& ops) {
  static constexpr int kLadder[] = {2, 3, 4};
  std::string last_error = "reconstruction not attempted";
  int last_built = -1;
  for (int depth : kLadder) {
    int d = depth;
    CandidatePool pool;
    while (true) {
      try {
        pool = build_pool(ops, d);
        break;
      } catch (const Error& e) {
        if (e.code() != Errc::PoolOverflow || d <= 1) throw;
        --d;
      }
    }
    if (d == last_built) continue;
    last_built = d;
    try {
      return detail::recover_from_pool(ops, pool);
    } catch (const Error& e) {
      if (e.code() != Errc::ReconstructionIncomplete && e.code() != Errc::EmptySelection) throw;
      last_error = e.what();
    }
  }
  fail(Errc::ReconstructionIncomplete, "depth ladder exhausted; last: " + last_error);
}

// Canonical form of a presentation: the AHU string of the recovered forest.
// depth == 0 selects the automatic ladder.
inline std::string canonical_string(const LGroupOps& ops, int depth = 0) {
  RootedForest f = depth == 0 ? recover_forest_auto(ops) : recover_forest(ops, depth);
  return f.ahu_canonical();
}

inline bool decide_iso(const LGroupOps& a, const LGroupOps& b, int depth = 0) {
  return canonical_string(a, depth) == canonical_string(b, depth);
}

}  // namespace treelex
