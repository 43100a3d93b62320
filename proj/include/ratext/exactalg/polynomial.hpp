#pragma once

#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ratext/exactalg/gaussian.hpp"
#include "ratext/exactalg/rational.hpp"

namespace ratext {

/// Dense univariate polynomial over an exact field. coefficients()[k] is the
/// coefficient of t^k; the sequence never ends in a zero, so the zero
/// polynomial is the empty sequence.
template <class Field>
class BasicPolynomial {
 public:
  using value_type = Field;

  BasicPolynomial() = default;
  explicit BasicPolynomial(std::vector<Field> coeffs) : c_(std::move(coeffs)) { trim(); }
  BasicPolynomial(std::initializer_list<Field> coeffs) : c_(coeffs) { trim(); }

  static BasicPolynomial constant(Field c) { return BasicPolynomial(std::vector<Field>{std::move(c)}); }
  static BasicPolynomial monomial(Field c, std::size_t degree) {
    std::vector<Field> v(degree + 1);
    v[degree] = std::move(c);
    return BasicPolynomial(std::move(v));
  }
  static BasicPolynomial identity() { return monomial(Field(1), 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Field>& coefficients() const { return c_; }
  Field coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Field(); }
  const Field& lead() const {
    if (c_.empty()) throw std::domain_error("Polynomial: leading coefficient of zero");
    return c_.back();
  }

  Field operator()(const Field& t) const {
    Field acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  BasicPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Field> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Field(static_cast<long>(k));
    return BasicPolynomial(std::move(d));
  }

  BasicPolynomial monic() const {
    if (is_zero()) return {};
    return *this * (Field(1) / lead());
  }

  BasicPolynomial operator-() const {
    std::vector<Field> v(c_);
    for (auto& x : v) x = -x;
    return BasicPolynomial(std::move(v));
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }

  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Field> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return BasicPolynomial(std::move(v));
  }
  friend BasicPolynomial operator*(BasicPolynomial a, const Field& s) {
    if (s.is_zero()) return {};
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend BasicPolynomial operator*(const Field& s, BasicPolynomial a) { return std::move(a) * s; }

  /// Euclidean division: returns (quotient, remainder) with deg r < deg d.
  friend std::pair<BasicPolynomial, BasicPolynomial> divmod(const BasicPolynomial& n,
                                                            const BasicPolynomial& d) {
    if (d.is_zero()) throw std::domain_error("Polynomial: division by the zero polynomial");
    if (n.degree() < d.degree()) return {BasicPolynomial(), n};
    std::vector<Field> r(n.c_);
    std::vector<Field> q(n.c_.size() - d.c_.size() + 1);
    const Field inv_lead = Field(1) / d.lead();
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      const Field f = r[k + dd] * inv_lead;
      if (f.is_zero()) continue;
      q[k] = f;
      for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= f * d.c_[j];
    }
    r.resize(dd);
    return {BasicPolynomial(std::move(q)), BasicPolynomial(std::move(r))};
  }
  friend BasicPolynomial operator/(const BasicPolynomial& n, const BasicPolynomial& d) { return divmod(n, d).first; }
  friend BasicPolynomial operator%(const BasicPolynomial& n, const BasicPolynomial& d) { return divmod(n, d).second; }

  /// Monic greatest common divisor; gcd(0, 0) = 0.
  friend BasicPolynomial gcd(BasicPolynomial a, BasicPolynomial b) {
    while (!b.is_zero()) {
      BasicPolynomial r = (a % b).monic();
      a = std::move(b).monic();
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) { return a.c_ == b.c_; }

  /// Human-readable form in the variable `var`, highest degree first.
  std::string str(char var = 'x') const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      Field c = c_[k];
      bool negative = false;
      if constexpr (requires { c.sign(); }) negative = c.sign() < 0;
      if (negative) c = -c;
      if (first) os << (negative ? "-" : "");
      else os << (negative ? " - " : " + ");
      first = false;
      const bool unit = c == Field(1);
      if (!unit || k == 0) os << c << (k >= 1 ? "*" : "");
      if (k >= 1) os << var;
      if (k >= 2) os << '^' << k;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const BasicPolynomial& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Field> c_;
};

using Polynomial = BasicPolynomial<Rational>;
using GaussianPolynomial = BasicPolynomial<GaussianRational>;

/// p(-t).
template <class Field>
BasicPolynomial<Field> reflect(const BasicPolynomial<Field>& p) {
  std::vector<Field> v(p.coefficients());
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
  return BasicPolynomial<Field>(std::move(v));
}

/// p^e for e >= 0.
template <class Field>
BasicPolynomial<Field> power(const BasicPolynomial<Field>& p, unsigned e) {
  BasicPolynomial<Field> r = BasicPolynomial<Field>::constant(Field(1));
  for (unsigned k = 0; k < e; ++k) r = r * p;
  return r;
}

inline double evaluate(const Polynomial& p, double t) {
  double acc = 0.0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + it->to_double();
  return acc;
}

/// Square-free decomposition p = lead * prod_k P_k^k (Yun). Returns the
/// monic factors P_k paired with their multiplicity k, skipping constants.
inline std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;
  const Polynomial f = p.monic();
  const Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = (f / a).monic();
  Polynomial c = (fp / a);
  Polynomial d = c - b.derivative();
  int k = 1;
  while (b.degree() >= 1) {
    Polynomial g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, k);
    Polynomial nb = (b / g).monic();
    c = d / g;
    d = c - nb.derivative();
    b = std::move(nb);
    ++k;
  }
  return out;
}

}  // namespace ratext
