#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "treelex/element.hpp"
#include "treelex/generators.hpp"
#include "treelex/parasemifield.hpp"
#include "treelex/pwl.hpp"
#include "treelex/reconstruct.hpp"
#include "treelex/weighted.hpp"

namespace treelex {

struct PropertyResult {
  std::string property;
  int passes = 0;
  int failures = 0;
  std::string counterexample;  // first failing instance, if any
};

struct FuzzReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<PropertyResult> results;

  bool ok() const {
    for (const auto& r : results)
      if (r.failures > 0) return false;
    return true;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "suite " << suite << " seed " << seed << " trials " << trials << "\n";
    for (const auto& r : results) {
      out << "  " << (r.failures == 0 ? "pass" : "FAIL") << "  " << r.property << "  ("
          << r.passes << " ok";
      if (r.failures > 0) out << ", " << r.failures << " failed; first: " << r.counterexample;
      out << ")\n";
    }
    return out.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["trials"] = trials;
    j["ok"] = ok();
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json e;
      e["property"] = r.property;
      e["passes"] = r.passes;
      e["failures"] = r.failures;
      if (r.failures > 0) e["counterexample"] = r.counterexample;
      rs.push_back(e);
    }
    j["results"] = rs;
    return j;
  }
};

namespace detail {

// FNV-1a; std::hash is not pinned down by the standard and reports must be
// byte-identical for a given seed everywhere.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class PropertyRunner {
 public:
  PropertyRunner(FuzzReport& report, std::uint64_t seed, int trials)
      : report_(report), seed_(seed), trials_(trials) {}

  // fn gets a per-trial RNG and returns (ok, description-on-failure).
  void run(const std::string& name,
           const std::function<std::pair<bool, std::string>(SplitMix64&)>& fn) {
    PropertyResult r;
    r.property = name;
    SplitMix64 master(seed_ ^ fnv1a(name));
    for (int t = 0; t < trials_; ++t) {
      SplitMix64 trial(master.fork(static_cast<std::uint64_t>(t)));
      auto [ok, why] = fn(trial);
      if (ok) {
        ++r.passes;
      } else {
        if (r.failures == 0) r.counterexample = why;
        ++r.failures;
      }
    }
    report_.results.push_back(std::move(r));
  }

 private:
  FuzzReport& report_;
  std::uint64_t seed_;
  int trials_;
};

inline std::string describe(const TlexElement& e) {
  std::string s = "(";
  for (int i = 0; i < e.forest()->size(); ++i) {
    if (i) s += ",";
    s += e.at(i).str();
  }
  return s + ") on " + e.forest()->ahu_canonical();
}

inline void suite_lgroup_axioms(PropertyRunner& run) {
  auto sample = [](SplitMix64& rng) {
    ForestPtr f = random_forest(rng, 8, 1);
    TlexElement a = random_element_with(rng, f, 1000000);
    TlexElement b = random_element_with(rng, f, 1000000);
    TlexElement c = random_element_with(rng, f, 1000000);
    return std::tuple{f, a, b, c};
  };
  run.run("join-meet-lattice", [&](SplitMix64& rng) -> std::pair<bool, std::string> {
    auto [f, a, b, c] = sample(rng);
    bool ok = join(a, b) == join(b, a) && meet(a, b) == meet(b, a) &&
              join(a, join(b, c)) == join(join(a, b), c) &&
              meet(a, meet(b, c)) == meet(meet(a, b), c) && join(a, a) == a && meet(a, a) == a &&
              join(a, meet(a, b)) == a && meet(a, join(a, b)) == a;
    return {ok, ok ? "" : describe(a) + " " + describe(b) + " " + describe(c)};
  });
  run.run("group-laws", [&](SplitMix64& rng) -> std::pair<bool, std::string> {
    auto [f, a, b, c] = sample(rng);
    const auto z = zero(f);
    bool ok = add(a, b) == add(b, a) && add(a, add(b, c)) == add(add(a, b), c) &&
              add(a, z) == a && add(a, neg(a)) == z;
    return {ok, ok ? "" : describe(a) + " " + describe(b)};
  });
  run.run("translation-invariance", [&](SplitMix64& rng) -> std::pair<bool, std::string> {
    auto [f, a, b, c] = sample(rng);
    bool ok = add(a, join(b, c)) == join(add(a, b), add(a, c)) &&
              add(a, meet(b, c)) == meet(add(a, b), add(a, c));
    return {ok, ok ? "" : describe(a) + " " + describe(b) + " " + describe(c)};
  });
  run.run("join-plus-meet", [&](SplitMix64& rng) -> std::pair<bool, std::string> {
    auto [f, a, b, c] = sample(rng);
    (void)c;
    bool ok = add(join(a, b), meet(a, b)) == add(a, b);
    return {ok, ok ? "" : describe(a) + " " + describe(b)};
  });
}

inline void suite_parasemifield_axioms(PropertyRunner& run) {
  run.run("idempotency-distributivity", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    ForestPtr f = random_forest(rng, 8, 1);
    Parasemifield ps = wrap(f);
    TlexElement a = random_element_with(rng, f, 1000000);
    TlexElement b = random_element_with(rng, f, 1000000);
    TlexElement c = random_element_with(rng, f, 1000000);
    bool ok = ps.ps_add(a, a) == a &&
              ps.ps_mul(a, ps.ps_add(b, c)) == ps.ps_add(ps.ps_mul(a, b), ps.ps_mul(a, c)) &&
              ps.ps_mul(a, ps.ps_inv(a)) == ps.ps_one() && ps.ps_mul(a, ps.ps_one()) == a;
    return {ok, ok ? "" : describe(a) + " " + describe(b) + " " + describe(c)};
  });
  run.run("meet-recovery", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    ForestPtr f = random_forest(rng, 8, 1);
    Parasemifield ps = wrap(f);
    TlexElement a = random_element_with(rng, f, 1000000);
    TlexElement b = random_element_with(rng, f, 1000000);
    bool ok = ps.meet_via_inverses(a, b) == meet(a, b);
    return {ok, ok ? "" : describe(a) + " " + describe(b)};
  });
}

inline void suite_antisymmetry(PropertyRunner& run) {
  run.run("antisymmetry", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    ForestPtr f = random_forest(rng, 8, 1);
    TlexElement a = random_element_with(rng, f, 100);
    // Half the trials compare a with a disguised copy of itself.
    TlexElement b = rng.below(2) == 0 ? a : random_element_with(rng, f, 100);
    if (leq(a, b) && leq(b, a) && !(a == b)) return {false, describe(a) + " " + describe(b)};
    return {true, ""};
  });
  run.run("absorption-cancellation", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    // a + b + c = a with b, c <= a forces a + b = a (join language).
    ForestPtr f = random_forest(rng, 8, 1);
    Parasemifield ps = wrap(f);
    TlexElement a = random_element_with(rng, f, 100);
    TlexElement b = meet(a, random_element_with(rng, f, 100));
    TlexElement c = meet(a, random_element_with(rng, f, 100));
    if (!(ps.ps_add(ps.ps_add(a, b), c) == a)) return {true, ""};  // premise must hold
    bool ok = ps.ps_add(a, b) == a;
    return {ok, ok ? "" : describe(a) + " " + describe(b) + " " + describe(c)};
  });
}

inline void suite_purity(PropertyRunner& run) {
  run.run("cone-purity", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    ForestPtr f = random_forest(rng, 6, 1);
    const int arity = static_cast<int>(rng.range(1, 3));
    GeneratorAssignment ga = random_assignment(rng, f, arity, 20);
    Exponents a;
    for (int i = 0; i < arity; ++i) a.push_back(rng.range(0, 4));
    const bool base = cone_member(ga, a);
    for (long long n = 1; n <= 10; ++n) {
      Exponents na;
      for (long long x : a) na.push_back(n * x);
      if (cone_member(ga, na) != base)
        return {false, "n=" + std::to_string(n) + " breaks purity"};
    }
    return {true, ""};
  });
}

inline void suite_convexity_closure(PropertyRunner& run) {
  run.run("convex-closure", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    const int n = static_cast<int>(rng.range(1, 2));
    Simplex s = random_simplex(rng, n, n);
    PwlFunction f = random_convex_pwl(rng, n, 3, 3);
    PwlFunction g = random_convex_pwl(rng, n, 3, 3);
    bool ok = convex_check(pw_add(f, g), s) && convex_check(pw_join(f, g), s);
    return {ok, ok ? "" : "sum/join of convex functions flagged non-convex"};
  });
}

inline void suite_weight_denominator(PropertyRunner& run) {
  run.run("weight-denominator", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    WeightedComplex w0 = random_weighted_complex(rng, 5);
    StellarScript script = random_script(rng, w0, 6);
    std::vector<ScriptState> states = apply_stellar_script(w0, script);
    for (const auto& st : states)
      for (const auto& v : st.abstract.vertices())
        if (den(st.iota.at(v)) != st.abstract.weight(v))
          return {false, "omega(" + v + ") != den(iota(" + v + "))"};
    for (std::size_t i = 1; i < states.size(); ++i)
      if (!states[i].geometric.support_within(states[i - 1].geometric))
        return {false, "support not nested at step " + std::to_string(i - 1)};
    return {true, ""};
  });
}

inline void suite_reconstruction_roundtrip(PropertyRunner& run) {
  run.run("reconstruction-roundtrip", [](SplitMix64& rng) -> std::pair<bool, std::string> {
    ForestPtr f = random_forest(rng, 8, 0);
    ScrambledPresentation p =
        ScrambledPresentation::scramble(f, rng.next(), static_cast<int>(rng.range(0, 3)));
    RootedForest recovered = recover_forest_auto(p);
    bool ok = recovered.ahu_canonical() == f->ahu_canonical();
    return {ok, ok ? "" : "forest " + f->ahu_canonical() + " recovered as " +
                              recovered.ahu_canonical()};
  });
}

}  // namespace detail

// Runs one named property suite with a deterministic per-trial seed schedule.
// Identical (suite, seed, trials) always produce byte-identical reports.
inline FuzzReport fuzz(const std::string& suite, std::uint64_t seed, int trials) {
  if (trials < 1) fail(Errc::BadInput, "trials must be >= 1");
  FuzzReport report;
  report.suite = suite;
  report.seed = seed;
  report.trials = trials;
  detail::PropertyRunner runner(report, seed, trials);
  if (suite == "lgroup-axioms")
    detail::suite_lgroup_axioms(runner);
  else if (suite == "parasemifield-axioms")
    detail::suite_parasemifield_axioms(runner);
  else if (suite == "antisymmetry")
    detail::suite_antisymmetry(runner);
  else if (suite == "purity")
    detail::suite_purity(runner);
  else if (suite == "convexity-closure")
    detail::suite_convexity_closure(runner);
  else if (suite == "weight-denominator")
    detail::suite_weight_denominator(runner);
  else if (suite == "reconstruction-roundtrip")
    detail::suite_reconstruction_roundtrip(runner);
  else
    fail(Errc::UnknownSuite, "'" + suite + "'");
  return report;
}

inline std::vector<std::string> fuzz_suites() {
  return {"lgroup-axioms",      "parasemifield-axioms", "antisymmetry",
          "purity",             "convexity-closure",    "weight-denominator",
          "reconstruction-roundtrip"};
}

}  // namespace treelex
