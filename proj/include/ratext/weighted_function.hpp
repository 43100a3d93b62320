#pragma once

#include <cmath>

#include "ratext/exactalg.hpp"
#include "ratext/families.hpp"

namespace ratext {

/// R(t) * t^p * (1 + s t^2)^q * exp(beta t^2), scaled by norm_energy^(-1/2).
///
/// The class is closed under d/dx for any metric dt/dx = f(t) rational in t,
/// because the logarithmic derivative of the weight is itself rational.
struct WeightedFunction {
  RationalFunction rational;
  Rational power;          // p
  Rational binomial_exp;   // q
  int binomial_sign = 1;   // s
  Rational gaussian;       // beta
  Variable variable = Variable::x;
  Rational norm_energy{1};  // the overall factor is norm_energy^(-1/2)

  /// d/dt log(t^p (1 + s t^2)^q exp(beta t^2)).
  RationalFunction weight_log_derivative() const {
    RationalFunction g = RationalFunction::monomial(power, -1) + RationalFunction::monomial(Rational(2) * gaussian, 1);
    if (!binomial_exp.is_zero()) {
      const Polynomial h{Rational(1), Rational(0), Rational(binomial_sign)};
      g += RationalFunction(Polynomial::monomial(Rational(2 * binomial_sign) * binomial_exp, 1), h);
    }
    return g;
  }

  /// Same weight, rational part replaced.
  WeightedFunction with_rational(RationalFunction r) const {
    WeightedFunction out = *this;
    out.rational = std::move(r);
    return out;
  }

  /// d/dx with dt/dx = metric(t).
  WeightedFunction derivative(const RationalFunction& metric) const {
    return with_rational(metric * (rational.derivative() + rational * weight_log_derivative()));
  }

  WeightedFunction times(const RationalFunction& r) const { return with_rational(rational * r); }

  bool is_zero() const { return rational.is_zero(); }

  /// Value at the working-variable point t (norm_energy scaling included).
  double at(double t) const {
    double w = FloatRationalFunction(rational)(t);
    return w * weight(t);
  }

  /// The weight factor alone, including the normalization.
  double weight(double t) const {
    double w = 1.0;
    if (!power.is_zero()) {
      const double p = power.to_double();
      if (power.is_integer()) w *= std::pow(t, p);
      else w *= std::pow(std::abs(t), p);
    }
    if (!binomial_exp.is_zero()) w *= std::pow(std::abs(1.0 + binomial_sign * t * t), binomial_exp.to_double());
    if (!gaussian.is_zero()) w *= std::exp(gaussian.to_double() * t * t);
    if (!(norm_energy == Rational(1))) w /= std::sqrt(norm_energy.to_double());
    return w;
  }

  friend bool operator==(const WeightedFunction&, const WeightedFunction&) = default;
};

/// Sampler for a fixed WeightedFunction along x, composing t = y(x).
class WeightedSampler {
 public:
  WeightedSampler(const WeightedFunction& f, VariableMap map) : f_(f), r_(f.rational), map_(std::move(map)) {}
  double operator()(double x) const {
    const double t = map_.y(x);
    return r_(t) * f_.weight(t);
  }

 private:
  WeightedFunction f_;
  FloatRationalFunction r_;
  VariableMap map_;
};

/// exp(-Int u dx) for u = c1 t + c2 / t under the metric of `map`.
inline WeightedFunction ground_weight(const Rational& c1, const Rational& c2, const VariableMap& map) {
  WeightedFunction w;
  w.rational = RationalFunction(1);
  w.variable = map.kind == MapKind::identity ? Variable::x : Variable::y;
  if (map.kind == MapKind::identity) {
    w.power = -c2;
    w.gaussian = -c1 / Rational(2);
    return w;
  }
  const int s = map.metric_sign();
  // (c1 t^2 + c2) / (t (1 + s t^2)) = c2 / t + (c1 - s c2) t / (1 + s t^2)
  w.power = -c2 / map.alpha;
  w.binomial_sign = s;
  w.binomial_exp = -(Rational(s) * c1 - c2) / (Rational(2) * map.alpha);
  return w;
}

}  // namespace ratext
