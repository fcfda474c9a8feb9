// treelex: command-line surface over the tree-lexicographic l-group library.
//
// Exit codes: 0 on success (boolean answers print "true"/"false" and still
// exit 0), 1 when a computation or property check fails (fuzz counterexample,
// reconstruction that cannot complete), 2 on usage or input errors.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "treelex/treelex.hpp"

namespace fs = std::filesystem;
using namespace treelex;

namespace {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadInput, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    fail(Errc::BadInput, "invalid JSON in '" + path + "': " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(Errc::BadInput, "cannot write '" + path.string() + "'");
  out << text;
}

RationalPoint parse_point(const std::string& text) {
  RationalPoint p;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) p.coords.push_back(rat_from_json(Json(part)));
  if (p.coords.empty()) fail(Errc::BadInput, "empty point literal");
  return p;
}

Exponents parse_exponents(const std::string& text) {
  Exponents a;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      a.push_back(std::stoll(part));
    } catch (const std::exception&) {
      fail(Errc::BadInput, "bad exponent '" + part + "'");
    }
  }
  return a;
}

std::string coords_text(const TlexElement& e) {
  std::string s = "(";
  for (int i = 0; i < e.forest()->size(); ++i) {
    if (i) s += ", ";
    s += e.forest()->name_of(i) + ": " + e.at(i).str();
  }
  return s + ")";
}

// Tiny SVG rendering of a complex with ambient dimension <= 2.
std::string complex_svg(const GeometricComplex& k) {
  if (k.ambient_dim() > 2) fail(Errc::BadInput, "--emit-svg supports ambient dimension <= 2");
  const double scale = 360.0, pad = 20.0;
  auto sx = [&](const RationalPoint& p) {
    return pad + scale * (p.dim() >= 1 ? static_cast<double>(p[0]) : 0.0);
  };
  auto sy = [&](const RationalPoint& p) {
    return pad + scale * (1.0 - (p.dim() >= 2 ? static_cast<double>(p[1]) : 0.0));
  };
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='400' height='400' "
         "viewBox='0 0 400 400'>\n";
  for (const auto& s : k.maximal_simplexes()) {
    if (s.dim() == 2) {
      out << "<polygon points='";
      for (const auto& v : s.verts) out << sx(v) << "," << sy(v) << " ";
      out << "' fill='#cfe3ff' stroke='#225' stroke-width='1'/>\n";
    } else if (s.dim() == 1) {
      out << "<line x1='" << sx(s.verts[0]) << "' y1='" << sy(s.verts[0]) << "' x2='"
          << sx(s.verts[1]) << "' y2='" << sy(s.verts[1])
          << "' stroke='#225' stroke-width='2'/>\n";
    } else {
      out << "<circle cx='" << sx(s.verts[0]) << "' cy='" << sy(s.verts[0])
          << "' r='4' fill='#225'/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void emit(const Options& opt, const Json& j, const std::string& text) {
  if (opt.json())
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"tree-indexed lattice-ordered group toolkit"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));

  // canon
  std::string canon_forest;
  auto* canon = app.add_subcommand("canon", "canonical form of a rooted forest");
  canon->add_option("--forest", canon_forest, "forest JSON file")->required();

  // iso
  std::string iso_a, iso_b;
  auto* iso = app.add_subcommand("iso", "isomorphism of forests or presentations");
  iso->add_option("--a", iso_a, "first file")->required();
  iso->add_option("--b", iso_b, "second file")->required();

  // reconstruct
  std::string rec_file;
  int rec_depth = 0;
  auto* rec = app.add_subcommand("reconstruct", "recover the rooted forest of a presentation");
  rec->add_option("--presentation", rec_file, "presentation JSON file")->required();
  rec->add_option("--depth", rec_depth, "fixed pool depth (default: automatic ladder)");

  // eval
  std::string eval_env, eval_expr, eval_mode = "lgroup";
  auto* eval = app.add_subcommand("eval", "evaluate an expression over named elements");
  eval->add_option("--env", eval_env, "environment JSON file")->required();
  eval->add_option("--expr", eval_expr, "expression source")->required();
  eval->add_option("--mode", eval_mode, "expression mode")
      ->check(CLI::IsMember({"lgroup", "semiring"}));

  // stellar
  std::string st_complex, st_script, st_steps_dir, st_svg_dir;
  auto* stellar = app.add_subcommand("stellar", "apply a stellar script");
  stellar->add_option("--complex", st_complex, "weighted complex JSON file")->required();
  stellar->add_option("--script", st_script, "script JSON file")->required();
  stellar->add_option("--emit-steps", st_steps_dir, "write one JSON file per step");
  stellar->add_option("--emit-svg", st_svg_dir, "write one SVG per step (ambient <= 2)");

  // pwl
  auto* pwl = app.add_subcommand("pwl", "piecewise-linear function checks");
  pwl->require_subcommand(1);
  std::string pwl_fn, pwl_complex, pwl_steps_dir, pwl_point;
  int pwl_depth = 0;
  auto add_pwl_common = [&](CLI::App* sub, bool needs_fn = true) {
    if (needs_fn) sub->add_option("--fn", pwl_fn, "PWL JSON file")->required();
  };
  auto* pwl_eval = pwl->add_subcommand("eval", "evaluate at a point");
  add_pwl_common(pwl_eval);
  pwl_eval->add_option("--point", pwl_point, "rational point \"1/3,2/5\"")->required();
  auto* pwl_convex = pwl->add_subcommand("convex", "exact convexity on each maximal simplex");
  add_pwl_common(pwl_convex);
  pwl_convex->add_option("--complex", pwl_complex, "geometric complex JSON file")->required();
  auto* pwl_vanish = pwl->add_subcommand("vanish", "exact vanishing on a complex");
  add_pwl_common(pwl_vanish);
  pwl_vanish->add_option("--complex", pwl_complex, "geometric complex JSON file")->required();
  auto* pwl_ideal = pwl->add_subcommand("ideal", "ideal membership at a script depth");
  add_pwl_common(pwl_ideal);
  pwl_ideal->add_option("--steps", pwl_steps_dir, "directory written by stellar --emit-steps")
      ->required();
  pwl_ideal->add_option("--depth", pwl_depth, "step index")->required();

  // cone
  std::string cone_gens, cone_exp;
  auto* cone = app.add_subcommand("cone", "cone membership of an exponent vector");
  cone->add_option("--gens", cone_gens, "generator assignment JSON file")->required();
  cone->add_option("--exp", cone_exp, "exponents \"a1,a2,...\"")->required();

  // unit
  std::string unit_gens;
  long long unit_degree = 6, unit_nbound = 512;
  auto* unit = app.add_subcommand("unit", "order-unit search and certificates");
  unit->add_option("--gens", unit_gens, "generator assignment JSON file")->required();
  unit->add_option("--degree-bound", unit_degree, "interior cone point degree bound");
  unit->add_option("--n-bound", unit_nbound, "certificate search bound");

  // fuzz
  std::string fuzz_suite;
  std::uint64_t fuzz_seed = 0;
  int fuzz_trials = 200;
  auto* fz = app.add_subcommand("fuzz", "seeded axiom and property fuzzer");
  fz->add_option("--suite", fuzz_suite, "suite name or 'all'")->required();
  fz->add_option("--seed", fuzz_seed, "master seed")->required();
  fz->add_option("--trials", fuzz_trials, "trials per property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*canon) {
      ForestPtr f = forest_from_json(load_json(canon_forest));
      emit(opt, Json{{"canonical", f->ahu_canonical()}}, f->ahu_canonical());
    } else if (*iso) {
      Json ja = load_json(iso_a), jb = load_json(iso_b);
      bool result = false;
      Json out;
      if (looks_like_presentation(ja) || looks_like_presentation(jb)) {
        auto pa = presentation_from_json(ja);
        auto pb = presentation_from_json(jb);
        result = decide_iso(pa, pb);
        out = Json{{"isomorphic", result}};
      } else {
        ForestPtr fa = forest_from_json(ja), fb = forest_from_json(jb);
        auto witness = forest_iso(*fa, *fb);
        result = witness.has_value();
        out = Json{{"isomorphic", result}};
        if (witness) out["witness"] = *witness;
      }
      emit(opt, out, result ? "true" : "false");
    } else if (*rec) {
      auto p = presentation_from_json(load_json(rec_file));
      RootedForest f = rec_depth > 0 ? recover_forest(p, rec_depth) : recover_forest_auto(p);
      bool matches = f.ahu_canonical() == p.hidden_forest().ahu_canonical();
      Json out{{"canonical", f.ahu_canonical()},
               {"dimension", p.dimension()},
               {"forest", forest_to_json(f)},
               {"matches_hidden", matches}};
      emit(opt, out,
           f.ahu_canonical() + (matches ? "  (matches hidden forest)" : "  (MISMATCH)"));
      if (!matches) return 1;
    } else if (*eval) {
      Json env_json = load_json(eval_env);
      ForestPtr f = forest_from_json(env_json.at("forest"));
      std::map<std::string, TlexElement> env;
      if (env_json.contains("elements"))
        for (const auto& [name, je] : env_json.at("elements").items())
          env.emplace(name, element_from_json(je, f));
      ParseMode mode = eval_mode == "semiring" ? ParseMode::Semiring : ParseMode::LGroup;
      TlexElement result = evaluate_expr(parse_expr(eval_expr, mode), env, f);
      emit(opt, element_to_json(result, false), coords_text(result));
    } else if (*stellar) {
      WeightedComplex w0 = weighted_from_json(load_json(st_complex));
      StellarScript script = script_from_json(load_json(st_script));
      auto states = apply_stellar_script(w0, script);
      if (!st_steps_dir.empty()) {
        fs::create_directories(st_steps_dir);
        for (std::size_t i = 0; i < states.size(); ++i) {
          std::ostringstream name;
          name << "step_" << std::setw(3) << std::setfill('0') << i << ".json";
          write_file(fs::path(st_steps_dir) / name.str(), script_state_to_json(states[i]).dump(2));
        }
      }
      if (!st_svg_dir.empty()) {
        fs::create_directories(st_svg_dir);
        for (std::size_t i = 0; i < states.size(); ++i) {
          std::ostringstream name;
          name << "step_" << std::setw(3) << std::setfill('0') << i << ".svg";
          write_file(fs::path(st_svg_dir) / name.str(), complex_svg(states[i].geometric));
        }
      }
      Json out = Json::array();
      std::ostringstream text;
      for (std::size_t i = 0; i < states.size(); ++i) {
        Json step{{"step", i},
                  {"vertices", states[i].abstract.vertices().size()},
                  {"maximal_sets", states[i].abstract.maximal_sets().size()},
                  {"simplexes", states[i].geometric.simplexes().size()}};
        out.push_back(step);
        text << "step " << i << ": " << states[i].abstract.vertices().size() << " vertices, "
             << states[i].abstract.maximal_sets().size() << " maximal sets, "
             << states[i].geometric.simplexes().size() << " simplexes";
        if (i + 1 < states.size()) text << "\n";
      }
      emit(opt, out, text.str());
    } else if (*pwl) {
      PwlFunction f = pwl_from_json(load_json(pwl_fn));
      if (*pwl_eval) {
        Rat v = f.eval(parse_point(pwl_point));
        emit(opt, Json{{"value", to_string(v)}}, to_string(v));
      } else if (*pwl_convex) {
        GeometricComplex k = geometric_from_json(load_json(pwl_complex));
        bool all = true;
        for (const auto& s : k.maximal_simplexes()) all = all && convex_check(f, s);
        emit(opt, Json{{"convex", all}}, all ? "true" : "false");
      } else if (*pwl_vanish) {
        GeometricComplex k = geometric_from_json(load_json(pwl_complex));
        bool v = vanishes_on(f, k);
        emit(opt, Json{{"vanishes", v}}, v ? "true" : "false");
      } else if (*pwl_ideal) {
        std::ostringstream name;
        name << "step_" << std::setw(3) << std::setfill('0') << pwl_depth << ".json";
        fs::path step_file = fs::path(pwl_steps_dir) / name.str();
        Json j = load_json(step_file.string());
        GeometricComplex k = geometric_from_json(j.at("geometric"));
        bool member = vanishes_on(f, k);
        emit(opt, Json{{"member_at_depth", member}, {"depth", pwl_depth}},
             member ? "true" : "false");
      }
    } else if (*cone) {
      GeneratorAssignment ga = assignment_from_json(load_json(cone_gens));
      bool member = cone_member(ga, parse_exponents(cone_exp));
      emit(opt, Json{{"member", member}}, member ? "true" : "false");
    } else if (*unit) {
      GeneratorAssignment ga = assignment_from_json(load_json(unit_gens));
      Json out;
      std::ostringstream text;
      auto c = find_interior_cone_point(ga, unit_degree);
      if (c) {
        TlexElement u = def2_unit_from_cone(ga, *c);
        out["interior_point"] = *c;
        out["cone_unit"] = element_to_json(u, false);
        text << "interior cone point found; cone unit " << coords_text(u) << "\n";
        Json certs = Json::array();
        for (const auto& g : ga.gens) {
          auto n = def2_check(u, g, unit_nbound);
          certs.push_back(n ? Json(n->str()) : Json());
          text << "  generator " << coords_text(g) << ": "
               << (n ? "n = " + n->str() : "no certificate within bound") << "\n";
        }
        out["cone_certificates"] = certs;
      } else {
        out["interior_point"] = nullptr;
        text << "no interior cone point of degree <= " << unit_degree << "\n";
      }
      TlexElement fb = fallback_unit(ga.forest);
      out["fallback_unit"] = element_to_json(fb, false);
      Json fcerts = Json::array();
      text << "fallback unit " << coords_text(fb);
      for (const auto& g : ga.gens) {
        auto n = def2_check(fb, g, unit_nbound);
        fcerts.push_back(n ? Json(n->str()) : Json());
        text << "\n  generator " << coords_text(g) << ": "
             << (n ? "n = " + n->str() : "no certificate within bound");
      }
      out["fallback_certificates"] = fcerts;
      emit(opt, out, text.str());
    } else if (*fz) {
      std::vector<std::string> suites =
          fuzz_suite == "all" ? fuzz_suites() : std::vector<std::string>{fuzz_suite};
      bool all_ok = true;
      Json out = Json::array();
      std::ostringstream text;
      for (const auto& s : suites) {
        FuzzReport report = fuzz(s, fuzz_seed, fuzz_trials);
        all_ok = all_ok && report.ok();
        out.push_back(report.to_json());
        text << report.to_text();
      }
      emit(opt, out, text.str());
      if (!all_ok) return 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
