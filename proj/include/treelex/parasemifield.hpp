#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treelex/element.hpp"
#include "treelex/errors.hpp"
#include "treelex/forest.hpp"
#include "treelex/numeric.hpp"

namespace treelex {

// G(F) viewed as an additively idempotent parasemifield: semiring addition is
// the lattice join, multiplication is the group addition, 1 is the group zero.
// Meet is a derived term: a ^ b = inv(inv(a) + inv(b)).
class Parasemifield {
 public:
  explicit Parasemifield(ForestPtr forest) : forest_(std::move(forest)) {}

  const ForestPtr& forest() const { return forest_; }

  TlexElement ps_add(const TlexElement& a, const TlexElement& b) const { return join(a, b); }
  TlexElement ps_mul(const TlexElement& a, const TlexElement& b) const { return add(a, b); }
  TlexElement ps_inv(const TlexElement& a) const { return neg(a); }
  TlexElement ps_one() const { return zero(forest_); }

  // (a^-1 + b^-1)^-1, which must coincide with the lattice meet.
  TlexElement meet_via_inverses(const TlexElement& a, const TlexElement& b) const {
    return ps_inv(ps_add(ps_inv(a), ps_inv(b)));
  }

 private:
  ForestPtr forest_;
};

inline Parasemifield wrap(ForestPtr forest) { return Parasemifield(std::move(forest)); }
inline ForestPtr unwrap(const Parasemifield& p) { return p.forest(); }

// Images g_1..g_m of the semiring generators x_1..x_m under a homomorphism
// into G(F). The assignment need not actually generate; cone computations are
// defined regardless, and NotFound outcomes are then legitimate.
struct GeneratorAssignment {
  ForestPtr forest;
  std::vector<TlexElement> gens;

  GeneratorAssignment(ForestPtr f, std::vector<TlexElement> g)
      : forest(std::move(f)), gens(std::move(g)) {
    for (const auto& e : gens)
      if (*e.forest() != *forest) fail(Errc::ForestMismatch, "generator on a different forest");
  }

  std::size_t arity() const { return gens.size(); }
};

using Exponents = std::vector<long long>;

namespace detail {
inline void require_exponents(const GeneratorAssignment& ga, const Exponents& a) {
  if (a.size() != ga.arity())
    fail(Errc::LengthMismatch, "expected " + std::to_string(ga.arity()) + " exponents, got " +
                                   std::to_string(a.size()));
  for (long long e : a)
    if (e < 0) fail(Errc::LengthMismatch, "exponents must be non-negative");
}
}  // namespace detail

// phi(x^a) in additive notation: sum_i a_i * g_i.
inline TlexElement monomial_eval(const GeneratorAssignment& ga, const Exponents& a) {
  detail::require_exponents(ga, a);
  TlexElement out = zero(ga.forest);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) out = add(out, scale(Int(a[i]), ga.gens[i]));
  return out;
}

// a lies in the cone C(S) iff phi(x^a) <= 1, i.e. the evaluated form is <= 0.
inline bool cone_member(const GeneratorAssignment& ga, const Exponents& a) {
  return leq(monomial_eval(ga, a), zero(ga.forest));
}

namespace detail {
// Enumerate exponent vectors of total degree d in lexicographic order with
// the leading coordinate largest first (graded-lex overall).
template <typename Fn>
bool enumerate_degree(Exponents& a, std::size_t pos, long long remaining, Fn&& visit) {
  if (pos + 1 == a.size()) {
    a[pos] = remaining;
    return visit(const_cast<const Exponents&>(a));
  }
  for (long long v = remaining; v >= 0; --v) {
    a[pos] = v;
    if (enumerate_degree(a, pos + 1, remaining - v, visit)) return true;
  }
  return false;
}
}  // namespace detail

// Interior cone point: c in C with c + e_i in C for every i, searched in
// graded-lex order up to the degree bound. NotFound is a value, not an error.
inline std::optional<Exponents> find_interior_cone_point(const GeneratorAssignment& ga,
                                                         long long degree_bound) {
  if (ga.arity() == 0) return Exponents{};
  std::optional<Exponents> found;
  auto good = [&](const Exponents& c) {
    if (!cone_member(ga, c)) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Exponents ci = c;
      ++ci[i];
      if (!cone_member(ga, ci)) return false;
    }
    return true;
  };
  Exponents a(ga.arity(), 0);
  for (long long d = 0; d <= degree_bound && !found; ++d) {
    detail::enumerate_degree(a, 0, d, [&](const Exponents& c) {
      if (good(c)) {
        found = c;
        return true;
      }
      return false;
    });
  }
  return found;
}

inline TlexElement def2_unit_from_cone(const GeneratorAssignment& ga, const Exponents& c) {
  return monomial_eval(ga, c);
}

// The unit that always satisfies the order-unital definition: the inverse of
// the group order-unit (so that u^n s + 1 = 1 becomes n*u + s <= 0).
inline TlexElement fallback_unit(const ForestPtr& f) {
  return neg(group_order_unit(f).element);
}

// Least n in [1, n_bound] with n*u + s <= 0, i.e. u^n s + 1 = 1 in the
// parasemifield. nullopt when no certificate exists within the bound.
inline std::optional<Int> def2_check(const TlexElement& u, const TlexElement& s, long long n_bound) {
  const auto z = zero(u.forest());
  TlexElement acc = s;
  for (long long n = 1; n <= n_bound; ++n) {
    acc = add(acc, u);
    if (leq(acc, z)) return Int(n);
  }
  return std::nullopt;
}

// The p-adic membership example: x in Q^+ with 2^(-v_p(x)) < x, decided by
// exact rational comparison. The base 2 is fixed.
inline bool is_prime(const Int& p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline long long padic_valuation(const Rat& x, const Int& p) {
  long long v = 0;
  Int n = rat_num(x);
  Int d = rat_den(x);
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

inline bool padic_member(const Rat& x, const Int& p) {
  if (!is_prime(p)) fail(Errc::NotPrime, "p must be prime");
  if (x <= 0) fail(Errc::NonPositive, "x must be a positive rational");
  long long v = padic_valuation(x, p);
  Int two_pow = Int(1) << static_cast<unsigned>(v < 0 ? -v : v);
  Rat threshold = v >= 0 ? Rat(Int(1), two_pow) : Rat(two_pow);
  return threshold < x;
}

}  // namespace treelex
