#pragma once

#include <ostream>
#include <string>
#include <utility>

#include "ratext/exactalg/errors.hpp"
#include "ratext/exactalg/polynomial.hpp"

namespace ratext {

/// Quotient num/den of polynomials over an exact field, kept canonical:
/// gcd(num, den) = 1 and den monic. Structural equality is mathematical
/// equality.
template <class Field>
class BasicRationalFunction {
 public:
  using Poly = BasicPolynomial<Field>;

  BasicRationalFunction() : den_(Poly::constant(Field(1))) {}
  BasicRationalFunction(Poly num) : num_(std::move(num)), den_(Poly::constant(Field(1))) {}  // NOLINT
  BasicRationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    canonicalize();
  }
  BasicRationalFunction(Field c) : num_(Poly::constant(std::move(c))), den_(Poly::constant(Field(1))) {}  // NOLINT
  BasicRationalFunction(long c) : BasicRationalFunction(Field(c)) {}  // NOLINT

  static BasicRationalFunction identity() { return BasicRationalFunction(Poly::identity()); }
  /// c * t^k for any integer k.
  static BasicRationalFunction monomial(Field c, int k) {
    if (k >= 0) return BasicRationalFunction(Poly::monomial(std::move(c), static_cast<std::size_t>(k)));
    return BasicRationalFunction(Poly::constant(std::move(c)),
                                 Poly::monomial(Field(1), static_cast<std::size_t>(-k)));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  BasicRationalFunction operator-() const { return raw(-num_, den_); }

  friend BasicRationalFunction operator+(const BasicRationalFunction& a, const BasicRationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return BasicRationalFunction(a.num_ + b.num_, a.den_);
    const Poly g = gcd(a.den_, b.den_);
    const Poly bg = b.den_ / g;
    const Poly ag = a.den_ / g;
    return BasicRationalFunction(a.num_ * bg + b.num_ * ag, a.den_ * bg);
  }
  friend BasicRationalFunction operator-(const BasicRationalFunction& a, const BasicRationalFunction& b) {
    return a + (-b);
  }
  friend BasicRationalFunction operator*(const BasicRationalFunction& a, const BasicRationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const Poly g1 = gcd(a.num_, b.den_);
    const Poly g2 = gcd(b.num_, a.den_);
    Poly n = (a.num_ / g1) * (b.num_ / g2);
    Poly d = (a.den_ / g2) * (b.den_ / g1);
    return normalized(std::move(n), std::move(d));
  }
  friend BasicRationalFunction operator/(const BasicRationalFunction& a, const BasicRationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("RationalFunction: division by the zero function");
    return a * raw(b.den_, b.num_);
  }
  BasicRationalFunction& operator+=(const BasicRationalFunction& o) { return *this = *this + o; }
  BasicRationalFunction& operator-=(const BasicRationalFunction& o) { return *this = *this - o; }
  BasicRationalFunction& operator*=(const BasicRationalFunction& o) { return *this = *this * o; }
  BasicRationalFunction& operator/=(const BasicRationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const BasicRationalFunction& a, const BasicRationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// d/dt by the quotient rule.
  BasicRationalFunction derivative() const {
    if (is_polynomial()) return BasicRationalFunction(num_.derivative() * (Field(1) / den_.lead()));
    return BasicRationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  /// Exact value at t; throws PoleError at a root of the denominator.
  Field operator()(const Field& t) const {
    const Field d = den_(t);
    if (d.is_zero()) throw PoleError("RationalFunction: evaluation at a pole");
    return num_(t) / d;
  }

  /// Quotient of num by den (the part that dominates at infinity).
  Poly polynomial_part() const { return num_ / den_; }

  /// f(-t).
  BasicRationalFunction reflected() const { return BasicRationalFunction(reflect(num_), reflect(den_)); }

  std::string str(char var = 'x') const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const BasicRationalFunction& f) { return os << f.str(); }

 private:
  struct RawTag {};
  BasicRationalFunction(RawTag, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}

  // Assumes gcd(num, den) = 1 already.
  static BasicRationalFunction normalized(Poly num, Poly den) {
    if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    const Field inv = Field(1) / den.lead();
    if (num.is_zero()) return BasicRationalFunction();
    return BasicRationalFunction(RawTag{}, num * inv, den * inv);
  }
  static BasicRationalFunction raw(Poly num, Poly den) { return normalized(std::move(num), std::move(den)); }

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly::constant(Field(1));
      return;
    }
    const Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    const Field inv = Field(1) / den_.lead();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }

  Poly num_;
  Poly den_;
};

using RationalFunction = BasicRationalFunction<Rational>;
using GaussianRationalFunction = BasicRationalFunction<GaussianRational>;

/// Floating evaluation with double coefficients (grid sampling path).
inline double evaluate(const RationalFunction& f, double t) {
  const double d = evaluate(f.den(), t);
  if (d == 0.0) throw PoleError("RationalFunction: floating evaluation at a pole");
  return evaluate(f.num(), t) / d;
}

/// Correctly-rounded value at a floating point t (exact evaluation at the
/// binary rational t, then one rounding).
inline double evaluate_rounded(const RationalFunction& f, double t) {
  return f(Rational::from_double(t)).to_double();
}

/// Coefficient arrays converted once, for repeated floating evaluation.
class FloatRationalFunction {
 public:
  FloatRationalFunction() = default;
  explicit FloatRationalFunction(const RationalFunction& f) {
    for (const auto& c : f.num().coefficients()) num_.push_back(c.to_double());
    for (const auto& c : f.den().coefficients()) den_.push_back(c.to_double());
  }
  double operator()(double t) const {
    const double d = horner(den_, t);
    if (d == 0.0) throw PoleError("RationalFunction: floating evaluation at a pole");
    return horner(num_, t) / d;
  }

 private:
  static double horner(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  std::vector<double> num_;
  std::vector<double> den_;
};

}  // namespace ratext
