#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ratext {

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Exact conversion of a binary floating value.
  static Rational from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("Rational: non-finite double");
    mpq_class q;
    q = d;
    return Rational(q);
  }

  /// Accepts "p", "p/q", and decimal strings such as "-1.25" or "3e-2".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("Rational: cannot parse '" + s + "'"); };
    if (s.empty()) throw bad();
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpz_class num, den;
      if (num.set_str(trim_plus(s.substr(0, slash)), 10) != 0) throw bad();
      if (den.set_str(trim_plus(s.substr(slash + 1)), 10) != 0) throw bad();
      if (den == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
      return {num, den};
    }
    std::string mant = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      mant = s.substr(0, e);
      const std::string ex = s.substr(e + 1);
      char* end = nullptr;
      exponent = std::strtol(ex.c_str(), &end, 10);
      if (ex.empty() || *end != '\0') throw bad();
    }
    std::string digits;
    long frac_len = 0;
    bool seen_dot = false;
    for (std::size_t i = 0; i < mant.size(); ++i) {
      const char c = mant[i];
      if ((c == '-' || c == '+') && i == 0) {
        if (c == '-') digits.push_back('-');
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_dot) ++frac_len;
      } else {
        throw bad();
      }
    }
    if (digits.empty() || digits == "-") throw bad();
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw bad();
    mpz_class scale;
    const long shift = exponent - frac_len;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    if (shift >= 0) return {num * scale, mpz_class(1)};
    return {num, scale};
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// "p/q", with "/q" omitted when q = 1.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  /// Nearest double (ties resolved toward the truncated value).
  double to_double() const {
    const double t = q_.get_d();
    if (!std::isfinite(t)) return t;
    const double away = std::nextafter(t, sign() >= 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(away)) return t;
    mpq_class qt, qa;
    qt = t;
    qa = away;
    const mpq_class dt = abs(q_ - qt);
    const mpq_class da = abs(q_ - qa);
    return da < dt ? away : t;
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static std::string trim_plus(std::string s) {
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    return s;
  }

  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Integer power, negative exponents allowed for nonzero bases.
inline Rational pow(const Rational& base, long e) {
  Rational result(1);
  Rational b = e >= 0 ? base : Rational(1) / base;
  unsigned long k = static_cast<unsigned long>(e >= 0 ? e : -e);
  while (k != 0) {
    if (k & 1UL) result *= b;
    b *= b;
    k >>= 1U;
  }
  return result;
}

}  // namespace ratext
