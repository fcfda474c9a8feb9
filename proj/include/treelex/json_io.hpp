#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "treelex/complex.hpp"
#include "treelex/element.hpp"
#include "treelex/errors.hpp"
#include "treelex/forest.hpp"
#include "treelex/parasemifield.hpp"
#include "treelex/pwl.hpp"
#include "treelex/rational.hpp"
#include "treelex/reconstruct.hpp"
#include "treelex/weighted.hpp"

namespace treelex {

using Json = nlohmann::json;

// Integers travel as decimal strings so coordinates never lose precision;
// plain JSON numbers are accepted on input for convenience.
inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      fail(Errc::BadInput, "bad integer literal '" + j.get<std::string>() + "'");
    }
  }
  fail(Errc::BadInput, "expected an integer (number or decimal string)");
}

inline Json int_to_json(const Int& v) { return v.str(); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) fail(Errc::BadInput, "expected a rational as \"p/q\" or \"p\"");
  const std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) fail(Errc::BadInput, "zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::BadInput, "bad rational literal '" + s + "'");
  }
}

inline Json rat_to_json(const Rat& r) { return to_string(r); }

// ---- forests ---------------------------------------------------------------
// {"vertices": [string], "parent": {child: parent}, "roots": [string]}

inline Json forest_to_json(const RootedForest& f) {
  Json j;
  j["vertices"] = f.vertex_names();
  Json parent = Json::object();
  for (const auto& [c, p] : f.parent_map()) parent[c] = p;
  j["parent"] = parent;
  j["roots"] = f.root_names();
  return j;
}

inline ForestPtr forest_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("parent") || !j.contains("roots"))
    fail(Errc::BadInput, "forest JSON needs vertices/parent/roots");
  std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
  std::vector<std::string> roots = j.at("roots").get<std::vector<std::string>>();
  std::map<std::string, std::string> parent;
  for (const auto& [c, p] : j.at("parent").items()) parent[c] = p.get<std::string>();
  return validate_forest(vertices, parent, roots);
}

// ---- elements ---------------------------------------------------------------
// {"forest": <forest JSON>, "coords": {vertex: "integer"}}

inline Json element_to_json(const TlexElement& e, bool embed_forest = true) {
  Json j;
  if (embed_forest) j["forest"] = forest_to_json(*e.forest());
  Json coords = Json::object();
  for (int i = 0; i < e.forest()->size(); ++i)
    coords[e.forest()->name_of(i)] = int_to_json(e.at(i));
  j["coords"] = coords;
  return j;
}

inline TlexElement element_from_json(const Json& j, ForestPtr forest = nullptr) {
  if (!forest) {
    if (!j.contains("forest")) fail(Errc::BadInput, "element JSON without forest");
    forest = forest_from_json(j.at("forest"));
  }
  if (!j.contains("coords")) fail(Errc::BadInput, "element JSON without coords");
  std::vector<Int> coords(forest->size(), 0);
  for (const auto& [name, value] : j.at("coords").items())
    coords[forest->index_of(name)] = int_from_json(value);
  return TlexElement(forest, std::move(coords));
}

// ---- generator assignments --------------------------------------------------
// {"forest": ..., "gens": [element JSON]}

inline Json assignment_to_json(const GeneratorAssignment& ga) {
  Json j;
  j["forest"] = forest_to_json(*ga.forest);
  Json gens = Json::array();
  for (const auto& g : ga.gens) gens.push_back(element_to_json(g, /*embed_forest=*/false));
  j["gens"] = gens;
  return j;
}

inline GeneratorAssignment assignment_from_json(const Json& j) {
  if (!j.contains("forest") || !j.contains("gens"))
    fail(Errc::BadInput, "assignment JSON needs forest and gens");
  ForestPtr forest = forest_from_json(j.at("forest"));
  std::vector<TlexElement> gens;
  for (const auto& g : j.at("gens")) gens.push_back(element_from_json(g, forest));
  return GeneratorAssignment(forest, std::move(gens));
}

// ---- weighted complexes and scripts -----------------------------------------
// {"vertices": [name], "weights": {name: int}, "sets": [[name]]}

inline Json weighted_to_json(const WeightedComplex& w) {
  Json j;
  j["vertices"] = w.vertices();
  Json weights = Json::object();
  for (const auto& [v, wt] : w.weights()) weights[v] = int_to_json(wt);
  j["weights"] = weights;
  Json sets = Json::array();
  for (const auto& s : w.maximal_sets()) sets.push_back(s);
  j["sets"] = sets;
  return j;
}

inline WeightedComplex weighted_from_json(const Json& j) {
  if (!j.contains("vertices") || !j.contains("weights") || !j.contains("sets"))
    fail(Errc::BadInput, "weighted complex JSON needs vertices/weights/sets");
  std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
  std::map<std::string, Int> weights;
  for (const auto& [v, wt] : j.at("weights").items()) weights[v] = int_from_json(wt);
  std::vector<std::vector<std::string>> sets;
  for (const auto& s : j.at("sets")) sets.push_back(s.get<std::vector<std::string>>());
  return WeightedComplex::validate(vertices, weights, sets);
}

// [{"op":"subdivide","edge":["v","w"],"new":"a"} | {"op":"delete","set":[..]} |
//  {"op":"identity"}]

inline Json script_to_json(const StellarScript& script) {
  Json j = Json::array();
  for (const auto& step : script) {
    Json s;
    switch (step.kind) {
      case StellarStep::Kind::Subdivide:
        s["op"] = "subdivide";
        s["edge"] = Json::array({step.edge.first, step.edge.second});
        s["new"] = step.new_name;
        break;
      case StellarStep::Kind::Delete:
        s["op"] = "delete";
        s["set"] = step.target;
        break;
      case StellarStep::Kind::Identity:
        s["op"] = "identity";
        break;
    }
    j.push_back(s);
  }
  return j;
}

inline StellarScript script_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::BadInput, "script JSON must be an array of steps");
  StellarScript out;
  for (const auto& s : j) {
    const std::string op = s.at("op").get<std::string>();
    if (op == "subdivide") {
      auto edge = s.at("edge").get<std::vector<std::string>>();
      if (edge.size() != 2) fail(Errc::BadInput, "subdivide edge needs two vertices");
      out.push_back(StellarStep::subdivide(edge[0], edge[1], s.at("new").get<std::string>()));
    } else if (op == "delete") {
      out.push_back(StellarStep::del(s.at("set").get<std::vector<std::string>>()));
    } else if (op == "identity") {
      out.push_back(StellarStep::identity());
    } else {
      fail(Errc::BadInput, "unknown script op '" + op + "'");
    }
  }
  return out;
}

// ---- geometric complexes (emit-steps output) ---------------------------------

inline Json point_to_json(const RationalPoint& p) {
  Json j = Json::array();
  for (const auto& c : p.coords) j.push_back(rat_to_json(c));
  return j;
}

inline RationalPoint point_from_json(const Json& j) {
  RationalPoint p;
  for (const auto& c : j) p.coords.push_back(rat_from_json(c));
  return p;
}

inline Json geometric_to_json(const GeometricComplex& k) {
  Json j;
  j["ambient"] = k.ambient_dim();
  Json maximal = Json::array();
  for (const auto& s : k.maximal_simplexes()) {
    Json verts = Json::array();
    for (const auto& v : s.verts) verts.push_back(point_to_json(v));
    maximal.push_back(verts);
  }
  j["simplexes"] = maximal;
  return j;
}

inline GeometricComplex geometric_from_json(const Json& j) {
  std::vector<Simplex> simplexes;
  for (const auto& s : j.at("simplexes")) {
    std::vector<RationalPoint> verts;
    for (const auto& v : s) verts.push_back(point_from_json(v));
    simplexes.push_back(Simplex(std::move(verts)));
  }
  return GeometricComplex::from_simplexes(simplexes, j.at("ambient").get<int>());
}

inline Json script_state_to_json(const ScriptState& st) {
  Json j;
  j["abstract"] = weighted_to_json(st.abstract);
  j["geometric"] = geometric_to_json(st.geometric);
  Json iota = Json::object();
  for (const auto& [v, p] : st.iota) iota[v] = point_to_json(p);
  j["iota"] = iota;
  return j;
}

// ---- PWL functions ------------------------------------------------------------
// {"n": int, "terms": [[{"coeffs":[int], "const": int}]]}

inline Json pwl_to_json(const PwlFunction& f) {
  Json j;
  j["n"] = f.n;
  Json terms = Json::array();
  for (const auto& inner : f.terms) {
    Json ji = Json::array();
    for (const auto& a : inner) {
      Json form;
      Json coeffs = Json::array();
      for (const auto& c : a.coeffs) coeffs.push_back(int_to_json(c));
      form["coeffs"] = coeffs;
      form["const"] = int_to_json(a.constant);
      ji.push_back(form);
    }
    terms.push_back(ji);
  }
  j["terms"] = terms;
  return j;
}

inline PwlFunction pwl_from_json(const Json& j) {
  PwlFunction f;
  f.n = j.at("n").get<int>();
  for (const auto& inner : j.at("terms")) {
    std::vector<AffineForm> forms;
    for (const auto& form : inner) {
      AffineForm a;
      for (const auto& c : form.at("coeffs")) a.coeffs.push_back(int_from_json(c));
      a.constant = int_from_json(form.at("const"));
      forms.push_back(std::move(a));
    }
    f.terms.push_back(std::move(forms));
  }
  f.validate();
  return f;
}

// ---- scrambled presentations ----------------------------------------------------
// {"dimension": n, "gens": [[...]], "hidden": {forest, permutation, shears}}
// The hidden block powers the simulation of the abstract operations and lets
// the harness verify reconstructions; the reconstruction algorithm itself
// only sees the ops interface.

inline Json presentation_to_json(const ScrambledPresentation& p) {
  Json j;
  j["dimension"] = p.dimension();
  Json gens = Json::array();
  for (const auto& g : p.gens()) {
    Json t = Json::array();
    for (const auto& x : g) t.push_back(int_to_json(x));
    gens.push_back(t);
  }
  j["gens"] = gens;
  Json hidden;
  hidden["forest"] = forest_to_json(p.hidden_forest());
  hidden["permutation"] = p.slot_of();
  Json shears = Json::array();
  for (const auto& s : p.shears()) {
    Json sh;
    sh["from"] = s.from;
    sh["to"] = s.to;
    sh["mult"] = s.mult;
    shears.push_back(sh);
  }
  hidden["shears"] = shears;
  j["hidden"] = hidden;
  return j;
}

inline ScrambledPresentation presentation_from_json(const Json& j) {
  if (!j.contains("hidden"))
    fail(Errc::BadInput, "presentation JSON needs the hidden block to simulate the operations");
  const Json& hidden = j.at("hidden");
  ForestPtr forest = forest_from_json(hidden.at("forest"));
  std::vector<int> perm = hidden.at("permutation").get<std::vector<int>>();
  std::vector<Shear> shears;
  for (const auto& s : hidden.value("shears", Json::array())) {
    shears.push_back(Shear{s.at("from").get<int>(), s.at("to").get<int>(),
                           s.at("mult").get<long long>()});
  }
  ScrambledPresentation p = ScrambledPresentation::from_parts(forest, perm, shears);
  if (j.contains("dimension") && j.at("dimension").get<int>() != p.dimension())
    fail(Errc::BadInput, "dimension does not match the hidden forest");
  if (j.contains("gens")) {
    const Json& gens = j.at("gens");
    if (gens.size() != p.gens().size()) fail(Errc::BadInput, "generator count mismatch");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Tuple t;
      for (const auto& x : gens[i]) t.push_back(int_from_json(x));
      if (t != p.gens()[i])
        fail(Errc::BadInput, "generator " + std::to_string(i) +
                                 " does not match the hidden presentation");
    }
  }
  return p;
}

inline bool looks_like_presentation(const Json& j) {
  return j.is_object() && j.contains("dimension") && j.contains("gens");
}

}  // namespace treelex
