#pragma once

#include <optional>
#include <vector>

#include "ratext/exactalg/polynomial.hpp"

namespace ratext {

/// Open interval (lo, hi) of the real line; a missing bound is infinite.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  static Interval whole() { return {}; }
  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b)}; }
  static Interval above(Rational a) { return {std::move(a), std::nullopt}; }
  static Interval below(Rational b) { return {std::nullopt, std::move(b)}; }

  bool contains(const Rational& t) const { return (!lo || *lo < t) && (!hi || t < *hi); }
};

/// Closed rational interval [lo, hi] holding exactly one root; lo == hi means
/// the root is exactly the rational lo.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
  Rational width() const { return hi - lo; }
};

struct RootIsolation {
  int count = 0;
  std::vector<RootInterval> roots;
};

inline Rational default_root_width() { return Rational(1, 1'000'000'000'000L); }

/// Sturm chain of a square-free polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& squarefree) {
    Polynomial a = squarefree;
    Polynomial b = squarefree.derivative();
    chain_.push_back(a);
    while (!b.is_zero()) {
      chain_.push_back(b);
      Polynomial r = -(a % b);
      // Positive rescaling keeps sign patterns intact.
      if (!r.is_zero()) r = r * (Rational(1) / abs(r.lead()));
      a = std::move(b);
      b = std::move(r);
    }
  }

  int sign_changes(const Rational& t) const {
    int changes = 0;
    int prev = 0;
    for (const auto& p : chain_) {
      const int s = p(t).sign();
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  }

  /// Distinct roots in the half-open interval (a, b].
  int count_half_open(const Rational& a, const Rational& b) const { return sign_changes(a) - sign_changes(b); }

  const Polynomial& base() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

/// Cauchy bound: every root has |t| < 1 + max |a_k / a_n|.
inline Rational cauchy_bound(const Polynomial& p) {
  Rational m(0);
  const Rational& lead = p.lead();
  for (int k = 0; k < p.degree(); ++k) {
    const Rational r = abs(p.coeff(static_cast<std::size_t>(k)) / lead);
    if (m < r) m = r;
  }
  return m + Rational(1);
}

namespace detail {

inline Polynomial squarefree_part(const Polynomial& p) {
  const Polynomial g = gcd(p, p.derivative());
  return (p / g).monic();
}

// Distinct roots of squarefree q strictly inside (a, b).
inline int count_open(const SturmSequence& s, const Rational& a, const Rational& b) {
  int c = s.count_half_open(a, b);
  if (s.base()(b).is_zero()) --c;
  return c;
}

inline void isolate(const SturmSequence& s, const Rational& a, const Rational& b, int count,
                    std::vector<RootInterval>& out) {
  if (count <= 0) return;
  if (count == 1) {
    out.push_back({a, b});
    return;
  }
  const Rational mid = (a + b) / Rational(2);
  const int left = count_open(s, a, mid);
  isolate(s, a, mid, left, out);
  if (s.base()(mid).is_zero()) out.push_back({mid, mid});
  isolate(s, mid, b, count_open(s, mid, b), out);
}

inline RootInterval refine(const SturmSequence& s, RootInterval r, const Rational& width) {
  while (!r.exact() && width < r.width()) {
    const Rational mid = r.midpoint();
    if (s.base()(mid).is_zero()) return {mid, mid};
    if (count_open(s, r.lo, mid) == 1) r.hi = mid;
    else r.lo = mid;
  }
  return r;
}

}  // namespace detail

/// Distinct real roots of p inside the open interval, each isolated in a
/// rational interval of width at most `width`. Infinite ends are replaced by
/// the Cauchy bound.
inline RootIsolation real_roots(const Polynomial& p, const Interval& where = Interval::whole(),
                                const Rational& width = default_root_width()) {
  if (p.is_zero()) throw std::invalid_argument("real_roots: zero polynomial");
  RootIsolation result;
  if (p.degree() < 1) return result;
  const Polynomial q = detail::squarefree_part(p);
  const Rational bound = cauchy_bound(q);
  Rational a = where.lo ? *where.lo : -bound;
  Rational b = where.hi ? *where.hi : bound;
  if (!(a < b)) return result;
  const SturmSequence s(q);
  result.count = detail::count_open(s, a, b);
  std::vector<RootInterval> raw;
  detail::isolate(s, a, b, result.count, raw);
  // Isolating intervals are open at both ends, so a root never sits on one.
  for (auto& r : raw) result.roots.push_back(detail::refine(s, r, width));
  return result;
}

}  // namespace ratext
