#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace treelex {

// Exact arithmetic everywhere: subdivision denominators and reconstruction
// coordinates are the actual content, so nothing here may round.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int int_gcd(Int a, Int b) {
  a = int_abs(a);
  b = int_abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int int_lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return int_abs(a / int_gcd(a, b) * b);
}

// Deterministic PRNG used for every randomized routine in the library.
// Fixed algorithm (splitmix64) so that seeds mean the same thing on every
// platform and toolchain; std::uniform_int_distribution is not portable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be positive. Modulo bias is irrelevant at the
  // ranges used here.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Derive a child seed; used to fan independent trials out of one master seed.
  std::uint64_t fork(std::uint64_t salt) {
    SplitMix64 mix(state_ ^ (salt * 0x9e3779b97f4a7c15ULL + 0x7fb5d329728ea185ULL));
    return mix.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace treelex
