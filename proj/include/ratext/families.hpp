#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "ratext/exactalg.hpp"

namespace ratext {

enum class Sign { plus, minus };

inline int sign_value(Sign s) { return s == Sign::plus ? 1 : -1; }
inline Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
inline const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

/// Which hyperbolic solution of dy/dx = alpha (1 - y^2) is used.
enum class Branch { tanh, coth };
inline const char* to_string(Branch b) { return b == Branch::tanh ? "tanh" : "coth"; }

struct ParamPair {
  Rational lambda;
  Rational mu;
  friend bool operator==(const ParamPair&, const ParamPair&) = default;
};

struct Harmonic {
  Rational omega;
  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

struct Isotonic {
  Rational omega;
  Rational l;
  friend bool operator==(const Isotonic&, const Isotonic&) = default;
};

/// V_s(y; a) = lambda (lambda - s alpha) y^2 + mu (mu - alpha) / y^2 + lambda0_s(a)
/// with dy/dx = alpha (1 + s y^2).
struct SecondCategory {
  Sign sign = Sign::plus;
  ParamPair a;
  Rational alpha;
  Rational phi0;
  Branch branch = Branch::tanh;
  friend bool operator==(const SecondCategory&, const SecondCategory&) = default;
};

using FamilySpec = std::variant<Harmonic, Isotonic, SecondCategory>;

enum class Variable { x, y };
inline const char* to_string(Variable v) { return v == Variable::x ? "x" : "y"; }

inline Variable working_variable(const FamilySpec& spec) {
  return std::holds_alternative<SecondCategory>(spec) ? Variable::y : Variable::x;
}

inline std::string describe(const FamilySpec& spec) {
  std::ostringstream os;
  if (const auto* h = std::get_if<Harmonic>(&spec)) {
    os << "harmonic(omega=" << h->omega << ")";
  } else if (const auto* i = std::get_if<Isotonic>(&spec)) {
    os << "isotonic(omega=" << i->omega << ",l=" << i->l << ")";
  } else {
    const auto& c = std::get<SecondCategory>(spec);
    os << "cat2" << (c.sign == Sign::plus ? "+" : "-") << "(lambda=" << c.a.lambda << ",mu=" << c.a.mu
       << ",alpha=" << c.alpha;
    if (!c.phi0.is_zero()) os << ",phi0=" << c.phi0;
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Change of variable

enum class MapKind { identity, tan, tanh, coth };

/// y(x) together with the metric factor dy/dx written as a function of y.
struct VariableMap {
  MapKind kind = MapKind::identity;
  Rational alpha{1};
  Rational phi0{0};

  /// +1 for tan (1 + y^2), -1 for tanh/coth (1 - y^2), 0 for the identity.
  int metric_sign() const {
    switch (kind) {
      case MapKind::identity: return 0;
      case MapKind::tan: return 1;
      default: return -1;
    }
  }

  /// dy/dx = alpha (1 +- y^2), or 1.
  RationalFunction metric() const {
    if (kind == MapKind::identity) return RationalFunction(1);
    return RationalFunction(Polynomial{alpha, Rational(0), alpha * Rational(metric_sign())});
  }

  double y(double x) const {
    const double arg = alpha.to_double() * x + phi0.to_double();
    switch (kind) {
      case MapKind::identity: return x;
      case MapKind::tan: return std::tan(arg);
      case MapKind::tanh: return std::tanh(arg);
      default: return 1.0 / std::tanh(arg);
    }
  }

  /// Inverse branch: x as a function of y (infinite y allowed).
  double x_of(double t) const {
    const double a = alpha.to_double();
    const double p = phi0.to_double();
    const double inf = std::numeric_limits<double>::infinity();
    switch (kind) {
      case MapKind::identity: return t;
      case MapKind::tan:
        if (std::isinf(t)) return ((t > 0 ? 1 : -1) * std::numbers::pi / 2 - p) / a;
        return (std::atan(t) - p) / a;
      case MapKind::tanh:
        if (t >= 1.0) return inf;
        if (t <= -1.0) return -inf;
        return (std::atanh(t) - p) / a;
      default:
        if (std::isinf(t)) return -p / a;
        if (std::abs(t) <= 1.0) return t > 0 ? inf : -inf;
        return (std::atanh(1.0 / t) - p) / a;
    }
  }

  friend bool operator==(const VariableMap&, const VariableMap&) = default;
};

inline const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::identity: return "identity";
    case MapKind::tan: return "tan";
    case MapKind::tanh: return "tanh";
    default: return "coth";
  }
}

/// Map for a second-category variable of the given type.
inline VariableMap map_for_type(Sign type, const Rational& alpha, const Rational& phi0, Branch branch) {
  if (type == Sign::plus) return {MapKind::tan, alpha, phi0};
  return {branch == Branch::tanh ? MapKind::tanh : MapKind::coth, alpha, phi0};
}

/// The family's own variable: y = tan / tanh / coth (alpha x + phi0), or y = x.
inline VariableMap change_of_variable(const FamilySpec& spec) {
  if (const auto* c = std::get_if<SecondCategory>(&spec)) return map_for_type(c->sign, c->alpha, c->phi0, c->branch);
  return {};
}

// ---------------------------------------------------------------------------
// Parameter maps and energies

inline Rational lambda0(Sign sign, const ParamPair& a, const Rational& alpha) {
  return -alpha * (a.lambda + Rational(sign_value(sign)) * a.mu) - Rational(2) * a.lambda * a.mu;
}

/// a_n = (lambda +- n alpha, mu + n alpha).
inline ParamPair shift_params(const SecondCategory& c, unsigned n) {
  const Rational step = c.alpha * Rational(static_cast<long>(n));
  return {c.a.lambda + Rational(sign_value(c.sign)) * step, c.a.mu + step};
}

/// a-bar = (lambda -+ alpha, mu).
inline ParamPair bar_params(const SecondCategory& c) {
  return {c.a.lambda - Rational(sign_value(c.sign)) * c.alpha, c.a.mu};
}

/// The family with its parameters moved to a_j (isotonic: l -> l + j).
inline FamilySpec shifted_spec(const FamilySpec& spec, unsigned j) {
  if (const auto* i = std::get_if<Isotonic>(&spec)) return Isotonic{i->omega, i->l + Rational(static_cast<long>(j))};
  if (const auto* c = std::get_if<SecondCategory>(&spec)) {
    SecondCategory s = *c;
    s.a = shift_params(*c, j);
    return s;
  }
  return spec;
}

namespace detail {

inline Rational phi2(Sign s, const ParamPair& a) {
  const Rational t = a.lambda + Rational(sign_value(s)) * a.mu;
  return t * t;
}

inline Rational raw_energy(const FamilySpec& spec, unsigned n) {
  const Rational nn(static_cast<long>(n));
  if (const auto* h = std::get_if<Harmonic>(&spec)) return nn * h->omega;
  if (const auto* i = std::get_if<Isotonic>(&spec)) return Rational(2) * nn * i->omega;
  const auto& c = std::get<SecondCategory>(spec);
  return Rational(sign_value(c.sign)) * (phi2(c.sign, shift_params(c, n)) - phi2(c.sign, c.a));
}

}  // namespace detail

struct ValidationResult {
  bool ok = true;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

/// Parameter admissibility alone: omega > 0, l >= 0, alpha > 0.
inline ValidationResult validate_basic(const FamilySpec& spec) {
  auto fail = [](std::string msg) { return ValidationResult{false, std::move(msg)}; };
  if (const auto* h = std::get_if<Harmonic>(&spec)) {
    if (h->omega.sign() <= 0) return fail("omega must be positive");
  } else if (const auto* i = std::get_if<Isotonic>(&spec)) {
    if (i->omega.sign() <= 0) return fail("omega must be positive");
    if (i->l.sign() < 0) return fail("l must be nonnegative");
  } else if (std::get<SecondCategory>(spec).alpha.sign() <= 0) {
    return fail("alpha must be positive");
  }
  return {};
}

/// Accepts iff the family parameters are admissible and E_0 < ... < E_{n_max};
/// minus type additionally needs lambda_n - mu_n > 0 for every n <= n_max.
inline ValidationResult validate_params(const FamilySpec& spec, unsigned n_max) {
  auto fail = [](std::string msg) { return ValidationResult{false, std::move(msg)}; };
  if (auto basic = validate_basic(spec); !basic) return basic;
  if (!std::holds_alternative<SecondCategory>(spec)) return {};
  const auto& c = std::get<SecondCategory>(spec);
  if (c.sign == Sign::minus) {
    for (unsigned n = 0; n <= n_max; ++n) {
      const ParamPair an = shift_params(c, n);
      if ((an.lambda - an.mu).sign() <= 0) {
        std::ostringstream os;
        os << "minus type has no bound level " << n << ": lambda_n - mu_n = " << (an.lambda - an.mu)
           << " is not positive";
        return fail(os.str());
      }
    }
  }
  Rational prev = detail::raw_energy(spec, 0);
  for (unsigned n = 1; n <= n_max; ++n) {
    const Rational e = detail::raw_energy(spec, n);
    if (!(prev < e)) {
      std::ostringstream os;
      os << "energies not strictly increasing at level " << n << " (" << prev << " >= " << e << ")";
      return fail(os.str());
    }
    prev = e;
  }
  return {};
}

inline void require_valid(const FamilySpec& spec, unsigned n_max) {
  if (auto v = validate_params(spec, n_max); !v) throw ValidationError(describe(spec) + ": " + v.diagnostic);
}

/// E_n above the zero ground state.
inline Rational energy(const FamilySpec& spec, unsigned n) {
  require_valid(spec, n);
  return detail::raw_energy(spec, n);
}

/// delta in -V(i t) = V(t) + delta; defined for the harmonic and isotonic
/// families only.
inline std::optional<Rational> shift_delta(const FamilySpec& spec) {
  if (const auto* h = std::get_if<Harmonic>(&spec)) return h->omega;
  if (const auto* i = std::get_if<Isotonic>(&spec)) return Rational(2) * i->omega * (i->l + Rational(3, 2));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Potentials

/// A potential kept as rational part plus separate additive constant.
struct PotentialTerm {
  RationalFunction rational;
  Rational constant;

  RationalFunction total() const { return rational + RationalFunction(constant); }
  friend bool operator==(const PotentialTerm&, const PotentialTerm&) = default;
};

/// V in the family's own variable, normalized to E_0 = 0.
inline PotentialTerm base_potential(const FamilySpec& spec) {
  if (auto v = validate_basic(spec); !v) throw ValidationError(describe(spec) + ": " + v.diagnostic);
  if (const auto* h = std::get_if<Harmonic>(&spec)) {
    return {RationalFunction::monomial(h->omega * h->omega / Rational(4), 2), -h->omega / Rational(2)};
  }
  if (const auto* i = std::get_if<Isotonic>(&spec)) {
    return {RationalFunction::monomial(i->omega * i->omega / Rational(4), 2) +
                RationalFunction::monomial(i->l * (i->l + Rational(1)), -2),
            -i->omega * (i->l + Rational(3, 2))};
  }
  const auto& c = std::get<SecondCategory>(spec);
  const Rational s(sign_value(c.sign));
  return {RationalFunction::monomial(c.a.lambda * (c.a.lambda - s * c.alpha), 2) +
              RationalFunction::monomial(c.a.mu * (c.a.mu - c.alpha), -2),
          lambda0(c.sign, c.a, c.alpha)};
}

// ---------------------------------------------------------------------------
// Domains

enum class BoundaryKind { singular_wall, decay_at_infinity };
inline const char* to_string(BoundaryKind b) {
  return b == BoundaryKind::singular_wall ? "singular_wall" : "decay_at_infinity";
}

/// Interval of the working variable t (exact, possibly infinite ends) and the
/// corresponding interval of x.
struct DomainSpec {
  VariableMap map;
  std::optional<Rational> t_lo;
  std::optional<Rational> t_hi;

  Interval t_interval() const { return {t_lo, t_hi}; }

  double t_lo_value() const { return t_lo ? t_lo->to_double() : -std::numeric_limits<double>::infinity(); }
  double t_hi_value() const { return t_hi ? t_hi->to_double() : std::numeric_limits<double>::infinity(); }

  double x_lo() const { return std::min(map.x_of(t_lo_value()), map.x_of(t_hi_value())); }
  double x_hi() const { return std::max(map.x_of(t_lo_value()), map.x_of(t_hi_value())); }

  BoundaryKind lo_kind() const {
    return std::isinf(x_lo()) ? BoundaryKind::decay_at_infinity : BoundaryKind::singular_wall;
  }
  BoundaryKind hi_kind() const {
    return std::isinf(x_hi()) ? BoundaryKind::decay_at_infinity : BoundaryKind::singular_wall;
  }

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// Default domain for potentials of `spec` written in the variable `map`:
/// the real line (harmonic), the half line (isotonic), and for second-category
/// variables the cell adjacent to y = 0 (tan: y in (0, inf) unless mu = 0,
/// else the full period; tanh: y in (0, 1); coth: y > 1). For mu = alpha the
/// 1/y^2 term vanishes but psi_0 ~ y still has a zero at y = 0, so the half
/// cell is kept.
inline DomainSpec domain_for(const FamilySpec& spec, const VariableMap& map) {
  if (std::holds_alternative<Harmonic>(spec)) return {map, std::nullopt, std::nullopt};
  if (std::holds_alternative<Isotonic>(spec)) return {map, Rational(0), std::nullopt};
  const auto& c = std::get<SecondCategory>(spec);
  switch (map.kind) {
    case MapKind::tan:
      if (!c.a.mu.is_zero()) return {map, Rational(0), std::nullopt};
      return {map, std::nullopt, std::nullopt};
    case MapKind::tanh: return {map, Rational(0), Rational(1)};
    case MapKind::coth: return {map, Rational(1), std::nullopt};
    default: return {map, std::nullopt, std::nullopt};
  }
}

inline DomainSpec default_domain(const FamilySpec& spec) { return domain_for(spec, change_of_variable(spec)); }

}  // namespace ratext
