#pragma once

// Shared helpers for the unit tests: seeded generators for random exact
// objects, and a small independent fraction type used as an oracle.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ratext.hpp"

namespace testing_support {

using ratext::Polynomial;
using ratext::Rational;
using ratext::RationalFunction;

/// Deterministic generator of small exact objects.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long mag = 9, long max_den = 6) {
    return Rational(integer(-mag, mag), integer(1, max_den));
  }
  Rational nonzero_rational(long mag = 9, long max_den = 6) {
    for (;;) {
      Rational r = rational(mag, max_den);
      if (!r.is_zero()) return r;
    }
  }

  Polynomial polynomial(int max_degree) {
    const int d = static_cast<int>(integer(0, max_degree));
    std::vector<Rational> c;
    for (int k = 0; k <= d; ++k) c.push_back(rational());
    return Polynomial(std::move(c));
  }
  Polynomial nonzero_polynomial(int max_degree) {
    for (;;) {
      Polynomial p = polynomial(max_degree);
      if (!p.is_zero()) return p;
    }
  }

  RationalFunction rational_function(int max_degree) {
    return RationalFunction(polynomial(max_degree), nonzero_polynomial(max_degree));
  }
  RationalFunction nonzero_rational_function(int max_degree) {
    return RationalFunction(nonzero_polynomial(max_degree), nonzero_polynomial(max_degree));
  }

  /// Distinct integer roots in [lo, hi].
  std::vector<long> distinct_roots(int count, long lo, long hi) {
    std::vector<long> r;
    while (static_cast<int>(r.size()) < count) {
      const long v = integer(lo, hi);
      if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
    }
    return r;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// prod (t - r_i), times `scale`.
inline Polynomial from_roots(const std::vector<long>& roots, const Rational& scale = Rational(1)) {
  Polynomial p = Polynomial::constant(scale);
  for (long r : roots) p = p * Polynomial{Rational(-r), Rational(1)};
  return p;
}

/// Reduced fraction over __int128: an oracle independent of GMP.
struct Frac {
  __int128 p = 0;
  __int128 q = 1;

  Frac() = default;
  Frac(long long a, long long b = 1) : p(a), q(b) { reduce(); }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void reduce() {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const __int128 g = gcd128(p, q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
  }
  friend Frac operator+(Frac a, Frac b) {
    Frac r;
    r.p = a.p * b.q + b.p * a.q;
    r.q = a.q * b.q;
    r.reduce();
    return r;
  }
  friend Frac operator-(Frac a, Frac b) { return a + Frac(-1) * b; }
  friend Frac operator*(Frac a, Frac b) {
    Frac r;
    r.p = a.p * b.p;
    r.q = a.q * b.q;
    r.reduce();
    return r;
  }
  friend Frac operator/(Frac a, Frac b) {
    Frac r;
    r.p = a.p * b.q;
    r.q = a.q * b.p;
    r.reduce();
    return r;
  }
  bool matches(const Rational& r) const {
    return r.numerator() == mpz_class(static_cast<long>(p)) && r.denominator() == mpz_class(static_cast<long>(q));
  }
};

}  // namespace testing_support
