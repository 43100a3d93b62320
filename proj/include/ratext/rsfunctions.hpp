#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ratext/exactalg.hpp"
#include "ratext/families.hpp"

namespace ratext {

/// w: the log-derivative superpotential -psi_n'/psi_n of level n.
/// v: its rotated image -i w_n(i t), a superpotential of the shifted problem.
enum class Flavor { w, v };
inline const char* to_string(Flavor f) { return f == Flavor::w ? "w" : "v"; }

struct RSFunction {
  FamilySpec spec;
  unsigned n = 0;
  Flavor flavor = Flavor::w;
  Variable variable = Variable::x;
  RationalFunction value;

  /// Change of variable governing d/dx for this function. Rotation flips the
  /// second-category type: a w of type s lives in a y of type s, its v in a y
  /// of type -s.
  VariableMap map() const {
    if (const auto* c = std::get_if<SecondCategory>(&spec)) {
      const Sign type = flavor == Flavor::w ? c->sign : opposite(c->sign);
      return map_for_type(type, c->alpha, c->phi0, c->branch);
    }
    return {};
  }
  RationalFunction metric() const { return map().metric(); }

  friend bool operator==(const RSFunction&, const RSFunction&) = default;
};

namespace detail {

// c1 t + c2 / t
inline RationalFunction linear_plus_inverse(const Rational& c1, const Rational& c2) {
  return RationalFunction::monomial(c1, 1) + RationalFunction::monomial(c2, -1);
}

inline RationalFunction ground_value(const FamilySpec& spec, Flavor flavor) {
  const Rational fs(flavor == Flavor::w ? -1 : 1);
  if (const auto* h = std::get_if<Harmonic>(&spec)) return RationalFunction::monomial(h->omega / Rational(2), 1);
  if (const auto* i = std::get_if<Isotonic>(&spec)) {
    return linear_plus_inverse(i->omega / Rational(2), fs * (i->l + Rational(1)));
  }
  const auto& c = std::get<SecondCategory>(spec);
  return linear_plus_inverse(c.a.lambda, fs * c.a.mu);
}

}  // namespace detail

/// Level-0 superpotential: harmonic omega x / 2; isotonic omega x / 2 -+ (l+1)/x;
/// second category lambda y -+ mu / y (minus for w, plus for v).
inline RSFunction ground_superpotential(const FamilySpec& spec, Flavor flavor) {
  require_valid(spec, 0);
  return {spec, 0, flavor, working_variable(spec), detail::ground_value(spec, flavor)};
}

/// Terminating continued fraction for level n. Partial j (1-based) has
/// numerator (E_n - E_{j-1}), negated for w, and denominator
/// ground(a_{j-1}) + ground(a_j).
inline RSFunction build_cf(const FamilySpec& spec, unsigned n, Flavor flavor) {
  require_valid(spec, n);
  const Rational fs(flavor == Flavor::w ? -1 : 1);
  const Rational En = energy(spec, n);
  std::vector<CFPartial> partials;
  partials.reserve(n);
  for (unsigned j = 1; j <= n; ++j) {
    partials.push_back({fs * (En - energy(spec, j - 1)),
                        detail::ground_value(shifted_spec(spec, j - 1), flavor) +
                            detail::ground_value(shifted_spec(spec, j), flavor)});
  }
  return {spec, n, flavor, working_variable(spec), cf_fold(detail::ground_value(spec, flavor), partials)};
}

/// r_n(a) = r_0(a) +- E_n(a) / (r_0(a) + r_{n-1}(a_1)), "+" for v and "-" for w.
inline RSFunction build_recurrence(const FamilySpec& spec, unsigned n, Flavor flavor) {
  require_valid(spec, n);
  const RationalFunction r0 = detail::ground_value(spec, flavor);
  if (n == 0) return {spec, 0, flavor, working_variable(spec), r0};
  const RSFunction prev = build_recurrence(shifted_spec(spec, 1), n - 1, flavor);
  const Rational fs(flavor == Flavor::w ? -1 : 1);
  const RationalFunction value = r0 + RationalFunction(fs * energy(spec, n)) / (r0 + prev.value);
  return {spec, n, flavor, working_variable(spec), value};
}

/// v_n(t) = -i w_n(i t). Throws ParityError if the result is not real.
inline RSFunction wick_rotate(const RSFunction& rs) {
  if (rs.flavor != Flavor::w) throw std::invalid_argument("wick_rotate: expects a w-flavor RS function");
  return {rs.spec, rs.n, Flavor::v, rs.variable, substitute_ix(rs.value, IPrefactor::minus_i)};
}

/// D = nodes * (1 + s t^2)^metric_power, the factor separating an excited
/// superpotential from the ground one.
struct NodeFactor {
  Polynomial nodes;
  int metric_power = 0;

  friend bool operator==(const NodeFactor&, const NodeFactor&) = default;
};

namespace detail {

inline RationalFunction log_derivative(const NodeFactor& d, int metric_sign) {
  RationalFunction g;
  if (!d.nodes.is_zero() && d.nodes.degree() >= 1) g = RationalFunction(d.nodes.derivative(), d.nodes);
  if (d.metric_power != 0 && metric_sign != 0) {
    const Polynomial h{Rational(1), Rational(0), Rational(metric_sign)};
    g += RationalFunction(h.derivative() * Rational(d.metric_power), h);
  }
  return g;
}

// Integer k with N = k M' modulo h (degree-2 h), if any.
inline std::optional<long> residue_on_factor(const Polynomial& N, const Polynomial& Mp, const Polynomial& h) {
  const Polynomial a = N % h;
  const Polynomial b = Mp % h;
  if (b.is_zero()) return std::nullopt;
  // a = k b with deg a, b <= 1.
  const Rational k = a.coeff(static_cast<std::size_t>(b.degree())) / b.lead();
  if (!(a == b * k) || !k.is_integer()) return std::nullopt;
  return k.numerator().get_si();
}

}  // namespace detail

/// Solves excited - ground = -+ f D'/D for D (sign "-" for w, "+" for v),
/// where f is the metric factor. Throws std::domain_error when no such D
/// exists. For second-category variables D may carry a power of the metric
/// polynomial 1 + s t^2.
inline NodeFactor log_derivative_split(const RSFunction& excited, const RSFunction& ground,
                                       const RationalFunction& metric) {
  if (excited.flavor != ground.flavor) throw std::invalid_argument("log_derivative_split: flavor mismatch");
  const Rational fs(excited.flavor == Flavor::w ? -1 : 1);
  const RationalFunction g = (excited.value - ground.value) / (metric * RationalFunction(fs));
  NodeFactor d{Polynomial::constant(Rational(1)), 0};
  if (g.is_zero()) return d;

  RationalFunction rest = g;
  const int ms = metric.is_polynomial() && metric.num().degree() == 2
                     ? (metric.num().coeff(2) / metric.num().coeff(0)).sign()
                     : 0;
  if (ms != 0) {
    const Polynomial h{Rational(1), Rational(0), Rational(ms)};
    if ((rest.den() % h).is_zero()) {
      const Polynomial M = rest.den();
      const auto k = detail::residue_on_factor(rest.num(), M.derivative(), h);
      if (!k) throw std::domain_error("log_derivative_split: non-integer residue on the metric factor");
      d.metric_power = static_cast<int>(*k);
      rest = rest - RationalFunction(h.derivative() * Rational(*k), h);
    }
  }

  if (!rest.is_zero()) {
    const Polynomial& N = rest.num();
    const Polynomial& M = rest.den();
    if (N.degree() != M.degree() - 1) throw std::domain_error("log_derivative_split: not a logarithmic derivative");
    const Rational total = N.lead() / M.lead();
    if (!total.is_integer() || total.sign() <= 0) {
      throw std::domain_error("log_derivative_split: degree of the node factor is not a positive integer");
    }
    const long deg = total.numerator().get_si();
    Polynomial nodes = Polynomial::constant(Rational(1));
    for (long k = 1; k <= deg; ++k) {
      const Polynomial part = gcd(M, N - M.derivative() * Rational(k));
      if (part.degree() >= 1) nodes = nodes * power(part, static_cast<unsigned>(k));
    }
    d.nodes = nodes.monic();
  }
  if (!(detail::log_derivative(d, ms) == g)) {
    throw std::domain_error("log_derivative_split: no node factor reproduces the difference");
  }
  return d;
}

/// A real pole of an RS function inside, or on the boundary of, a domain.
struct Pole {
  RootInterval where;         // in the working variable
  bool on_boundary = false;
  int multiplicity = 1;
  std::optional<Rational> residue;  // exact leading Laurent coefficient, rational poles only
  double residue_approx = 0.0;
  double x_residue = 0.0;     // leading coefficient after d/dx = f d/dt, simple poles

  double location() const { return where.midpoint().to_double(); }
};

namespace detail {

inline Pole pole_at_rational(const RationalFunction& f, const RationalFunction& metric, const Rational& r,
                             int multiplicity, bool boundary) {
  // den = (t - r)^m * rest
  Polynomial rest = f.den();
  const Polynomial lin{-r, Rational(1)};
  for (int k = 0; k < multiplicity; ++k) rest = rest / lin;
  const Rational c = f.num()(r) / rest(r);
  Pole p{{r, r}, boundary, multiplicity, c, c.to_double(), 0.0};
  const double fr = metric(r).to_double();
  p.x_residue = multiplicity == 1 && fr != 0.0 ? p.residue_approx / fr : p.residue_approx;
  return p;
}

}  // namespace detail

/// Real poles of rs within the closed domain (in the working variable), with
/// multiplicities and leading Laurent coefficients.
inline std::vector<Pole> pole_report(const RSFunction& rs, const DomainSpec& domain) {
  std::vector<Pole> out;
  const RationalFunction& f = rs.value;
  const RationalFunction metric = rs.metric();
  const auto factors = squarefree_decomposition(f.den());
  for (const auto& [factor, mult] : factors) {
    for (const auto& bound : {domain.t_lo, domain.t_hi}) {
      if (bound && factor(*bound).is_zero()) out.push_back(detail::pole_at_rational(f, metric, *bound, mult, true));
    }
    const RootIsolation iso = real_roots(factor, domain.t_interval());
    for (const auto& r : iso.roots) {
      if (r.exact()) {
        out.push_back(detail::pole_at_rational(f, metric, r.lo, mult, false));
        continue;
      }
      // Leading coefficient num(t) * m! / den^(m)(t) near an irrational root.
      Polynomial dm = f.den();
      double fact = 1.0;
      for (int k = 0; k < mult; ++k) {
        dm = dm.derivative();
        fact *= (k + 1);
      }
      const double t = r.midpoint().to_double();
      Pole p{r, false, mult, std::nullopt, evaluate(f.num(), t) * fact / evaluate(dm, t), 0.0};
      const double ft = evaluate(metric, t);
      p.x_residue = mult == 1 && ft != 0.0 ? p.residue_approx / ft : p.residue_approx;
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) { return a.where.lo < b.where.lo; });
  return out;
}

inline std::string describe_pole(const Pole& p, Variable var) {
  std::ostringstream os;
  os << "pole at " << to_string(var) << " = ";
  if (p.where.exact()) os << p.where.lo;
  else os << p.location();
  if (p.multiplicity > 1) os << " (order " << p.multiplicity << ")";
  os << ", residue ";
  if (p.residue) os << *p.residue;
  else os << p.residue_approx;
  if (p.on_boundary) os << " [boundary]";
  return os.str();
}

}  // namespace ratext
