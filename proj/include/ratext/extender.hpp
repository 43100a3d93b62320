#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ratext/exactalg.hpp"
#include "ratext/families.hpp"
#include "ratext/rsfunctions.hpp"
#include "ratext/weighted_function.hpp"

namespace ratext {

enum class IsoKind { strict, almost };
inline const char* to_string(IsoKind k) { return k == IsoKind::strict ? "strict" : "almost"; }

/// Raised when v_n has a pole inside the open domain.
class ExtensionRefused : public std::runtime_error {
 public:
  ExtensionRefused(const std::string& what, std::vector<Pole> poles)
      : std::runtime_error(what), poles_(std::move(poles)) {}
  const std::vector<Pole>& poles() const { return poles_; }

 private:
  std::vector<Pole> poles_;
};

/// Rational part and additive constant kept apart, plus the family whose
/// potential supplies the rational part (if any).
struct PotentialRecord {
  RationalFunction rational;
  Rational constant;
  std::optional<FamilySpec> base_family;

  RationalFunction total() const { return rational + RationalFunction(constant); }
  friend bool operator==(const PotentialRecord&, const PotentialRecord&) = default;
};

/// V^(n) = V_B + c, with B the family whose eigenbasis diagonalizes H^(n).
struct ForwardPotential {
  PotentialRecord record;
  FamilySpec base;
  Rational shift;
};

inline ForwardPotential forward_potential(const FamilySpec& spec, unsigned n) {
  require_valid(spec, n);
  const Rational En = energy(spec, n);
  FamilySpec base = spec;
  Rational shift;
  if (const auto delta = shift_delta(spec)) {
    shift = *delta + En;
  } else {
    const auto& c = std::get<SecondCategory>(spec);
    SecondCategory b = c;
    b.sign = opposite(c.sign);
    b.a = bar_params(c);
    shift = En - (lambda0(c.sign, c.a, c.alpha) + lambda0(b.sign, b.a, b.alpha));
    base = b;
  }
  const PotentialTerm vb = base_potential(base);
  return {{vb.rational, vb.constant + shift, base}, base, shift};
}

/// E_n - V(i t) computed directly from the family's own potential.
inline RationalFunction rotated_potential(const FamilySpec& spec, unsigned n) {
  return RationalFunction(energy(spec, n)) - substitute_ix(base_potential(spec).total(), IPrefactor::one);
}

struct Normalizability {
  IsoKind kind = IsoKind::strict;
  std::string justification;
};

struct ExtendedPotential {
  FamilySpec spec;
  unsigned n = 0;
  RSFunction v;
  PotentialRecord forward;
  PotentialRecord tilde;
  IsoKind iso_kind = IsoKind::strict;
  std::string iso_justification;
  DomainSpec domain;
  FamilySpec partner_base;  // B
  Rational forward_shift;   // c in V^(n) = V_B + c

  VariableMap map() const { return v.map(); }
  RationalFunction metric() const { return v.metric(); }
  std::vector<Pole> boundary_poles() const { return pole_report(v, domain); }

  friend bool operator==(const ExtendedPotential&, const ExtendedPotential&) = default;
};

namespace detail {

struct EndBehaviour {
  bool finite_x = true;  // the x end is a finite point
  int order = 0;         // v ~ C (x - x_b)^(-order), or C x^order at infinite ends
  double coefficient = 0.0;
  bool exponential = false;  // v grows like exp(|x|), sign carried by coefficient
};

// Leading Laurent coefficient of f at t -> r, where den has a root of multiplicity m.
inline Rational leading_at(const RationalFunction& f, const Rational& r, int m) {
  Polynomial rest = f.den();
  const Polynomial lin{-r, Rational(1)};
  for (int k = 0; k < m; ++k) rest = rest / lin;
  return f.num()(r) / rest(r);
}

inline int root_multiplicity(const Polynomial& p, const Rational& r) {
  int m = 0;
  Polynomial q = p;
  const Polynomial lin{-r, Rational(1)};
  while (!q.is_zero() && q.degree() >= 1 && q(r).is_zero()) {
    q = q / lin;
    ++m;
  }
  return m;
}

// Behaviour of v near the end t_b (nullopt means infinite t).
// `sigma` is +1 at the lower t end and -1 at the upper one.
inline EndBehaviour end_behaviour(const RationalFunction& v, const VariableMap& map, const std::optional<Rational>& tb,
                                  int sigma) {
  EndBehaviour e;
  const double a = map.alpha.to_double();
  if (!tb) {
    const Polynomial q = v.polynomial_part();
    if (map.kind == MapKind::identity) {
      e.finite_x = false;
      if (!q.is_zero()) {
        e.order = q.degree();
        e.coefficient = q.lead().to_double();
      } else if (!v.is_zero()) {
        e.order = v.num().degree() - v.den().degree();
        e.coefficient = (v.num().lead() / v.den().lead()).to_double();
      }
      return e;
    }
    // tan or coth with y -> +-inf: y ~ g / (x - x_b), g = -1 / (s alpha), at either end.
    const double g = -1.0 / (map.metric_sign() * a);
    if (q.is_zero() || q.degree() < 1) {
      e.order = 0;
      return e;
    }
    e.order = q.degree();
    e.coefficient = q.lead().to_double() * std::pow(g, e.order);
    return e;
  }
  const Rational r = *tb;
  const Rational fr = map.metric()(r);
  const int m = root_multiplicity(v.den(), r) - root_multiplicity(v.num(), r);
  if (!fr.is_zero()) {
    e.finite_x = true;
    e.order = m;
    if (m > 0) {
      const Rational c = leading_at(v, r, root_multiplicity(v.den(), r));
      e.coefficient = (c / pow(fr, m)).to_double();
    }
    return e;
  }
  // f(t_b) = 0: t_b = +-1 for tanh/coth, x infinite with the sign of t_b.
  e.finite_x = false;
  if (m <= 0) {
    e.order = 0;
    e.coefficient = m == 0 ? v(r).to_double() : 0.0;
    return e;
  }
  e.exponential = true;
  const Rational c = leading_at(v, r, root_multiplicity(v.den(), r));
  // (t - t_b)^(-m): the sign of t - t_b inside the domain is sigma.
  e.coefficient = c.to_double() * (m % 2 == 0 ? 1.0 : static_cast<double>(sigma));
  return e;
}

// Whether exp(-Int v dx) is square integrable at this end. `x_side` is +1 if
// the domain lies at larger x than the end (lower x end), -1 otherwise.
inline bool end_normalizable(const EndBehaviour& e, int x_side, std::string& why) {
  std::ostringstream os;
  if (e.finite_x) {
    if (e.order <= 0) {
      os << "v bounded at finite end";
      why = os.str();
      return true;
    }
    if (e.order == 1) {
      os << "simple pole with x-residue " << e.coefficient << (e.coefficient < 0.5 ? " < 1/2" : " >= 1/2");
      why = os.str();
      return e.coefficient < 0.5;
    }
    const double s = (e.order - 1) % 2 == 0 ? 1.0 : static_cast<double>(x_side);
    os << "pole of order " << e.order << " with coefficient " << e.coefficient;
    why = os.str();
    return e.coefficient * s < 0.0;
  }
  const int xs = -x_side;  // sign of x at this infinite end
  if (e.exponential) {
    os << "exponential growth of v with sign " << (e.coefficient * xs > 0 ? "+" : "-");
    why = os.str();
    return e.coefficient * xs > 0.0;
  }
  if (e.coefficient == 0.0 || e.order < -1) {
    os << "v decays at infinity, weight tends to a constant";
    why = os.str();
    return false;
  }
  if (e.order == -1) {
    os << "v ~ " << e.coefficient << "/x at infinity";
    why = os.str();
    return e.coefficient > 0.5;
  }
  const double s = (e.order + 1) % 2 == 0 ? 1.0 : static_cast<double>(xs);
  os << "v ~ " << e.coefficient << " x^" << e.order << " at " << (xs > 0 ? "+" : "-") << "infinity";
  why = os.str();
  return e.coefficient * s > 0.0;
}

}  // namespace detail

/// Classifies exp(-Int v dx) on the domain: almost if square integrable at
/// both ends and free of non-integrable poles, strict otherwise.
inline Normalizability normalizability_check(const RSFunction& v, const DomainSpec& domain) {
  const VariableMap map = v.map();
  for (const Pole& p : pole_report(v, domain)) {
    if (p.on_boundary) continue;
    std::ostringstream os;
    os << "strict: interior " << describe_pole(p, v.variable);
    if (p.multiplicity > 1 || p.x_residue >= 0.5) return {IsoKind::strict, os.str()};
  }
  // The lower t end is the lower x end unless the map reverses orientation.
  const bool increasing = map.kind != MapKind::coth;
  struct End {
    std::optional<Rational> t;
    int sigma;
  };
  const End ends[2] = {{domain.t_lo, 1}, {domain.t_hi, -1}};
  std::string report;
  for (const End& end : ends) {
    const auto e = detail::end_behaviour(v.value, map, end.t, end.sigma);
    const int x_side = increasing ? end.sigma : -end.sigma;
    std::string why;
    const bool ok = detail::end_normalizable(e, x_side, why);
    const std::string where = std::string(x_side > 0 ? "lower" : "upper") + " end";
    if (!ok) return {IsoKind::strict, "strict: " + where + ": " + why};
    if (!report.empty()) report += "; ";
    report += where + ": " + why;
  }
  return {IsoKind::almost, "almost: exp(-Int v) square integrable (" + report + ")"};
}

/// Builds V^(n) and its partner; refuses when v_n has a pole in the open domain.
inline ExtendedPotential build_extension(const FamilySpec& spec, unsigned n) {
  require_valid(spec, n);
  ExtendedPotential ext;
  ext.spec = spec;
  ext.n = n;
  ext.v = build_cf(spec, n, Flavor::v);
  ext.domain = domain_for(spec, ext.v.map());

  std::vector<Pole> interior;
  for (const Pole& p : pole_report(ext.v, ext.domain))
    if (!p.on_boundary) interior.push_back(p);
  if (!interior.empty()) {
    std::string msg = "extension refused: v_" + std::to_string(n) + " has a " + describe_pole(interior.front(), ext.v.variable);
    for (std::size_t i = 1; i < interior.size(); ++i) msg += "; " + describe_pole(interior[i], ext.v.variable);
    throw ExtensionRefused(msg, interior);
  }

  const ForwardPotential fwd = forward_potential(spec, n);
  if (!(fwd.record.total() == rotated_potential(spec, n))) {
    throw std::logic_error("build_extension: forward potential disagrees with E_n - V(it)");
  }
  ext.forward = fwd.record;
  ext.partner_base = fwd.base;
  ext.forward_shift = fwd.shift;

  const RationalFunction& v = ext.v.value;
  const RationalFunction via_derivative =
      ext.forward.total() - RationalFunction(2) * ext.metric() * v.derivative();
  const RationalFunction via_square = RationalFunction(2) * v * v - ext.forward.total();
  if (!(via_derivative == via_square)) throw std::logic_error("build_extension: Riccati mismatch");

  ext.tilde = {RationalFunction(2) * v * v - ext.forward.rational, -ext.forward.constant, fwd.base};
  if (!(ext.tilde.total() == via_square)) throw std::logic_error("build_extension: constant bookkeeping");

  const Normalizability norm = normalizability_check(ext.v, ext.domain);
  ext.iso_kind = norm.kind;
  ext.iso_justification = norm.justification;
  return ext;
}

struct SpectrumEntry {
  unsigned k = 0;
  Rational energy;
  std::string provenance;
  friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

using SpectrumPrediction = std::vector<SpectrumEntry>;

/// k-th level of H^(n): E_k(B) + c.
inline Rational forward_energy(const ExtendedPotential& ext, unsigned k) {
  return energy(ext.partner_base, k) + ext.forward_shift;
}

/// Levels 0..k_max of the partner Hamiltonian.
inline SpectrumPrediction predict_spectrum(const ExtendedPotential& ext, unsigned k_max) {
  SpectrumPrediction out;
  const bool x_family = shift_delta(ext.spec).has_value();
  const std::string forward_tag = x_family ? "E_k + E_n + delta" : "E_n(a) + E_k(a-bar) - (lambda0(a) + lambda0(a-bar))";
  if (ext.iso_kind == IsoKind::almost) {
    out.push_back({0, Rational(0), "extra ground state exp(-Int v_n)"});
    if (k_max >= 1) require_valid(ext.partner_base, k_max - 1);
    for (unsigned k = 1; k <= k_max; ++k) out.push_back({k, forward_energy(ext, k - 1), forward_tag + " at k-1"});
  } else {
    require_valid(ext.partner_base, k_max);
    for (unsigned k = 0; k <= k_max; ++k) out.push_back({k, forward_energy(ext, k), forward_tag});
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i - 1].energy < out[i].energy)) throw std::logic_error("predict_spectrum: energies not increasing");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form eigenfunctions

namespace detail {

// (c1, c2) with ground(t) = c1 t + c2 / t.
inline std::pair<Rational, Rational> ground_coefficients(const FamilySpec& spec, Flavor flavor) {
  const Rational fs(flavor == Flavor::w ? -1 : 1);
  if (const auto* h = std::get_if<Harmonic>(&spec)) return {h->omega / Rational(2), Rational(0)};
  if (const auto* i = std::get_if<Isotonic>(&spec)) return {i->omega / Rational(2), fs * (i->l + Rational(1))};
  const auto& c = std::get<SecondCategory>(spec);
  return {c.a.lambda, fs * c.a.mu};
}

}  // namespace detail

/// psi_k of the family B: D_k times the ground weight, unnormalized.
inline WeightedFunction family_eigenfunction(const FamilySpec& family, unsigned k) {
  const VariableMap map = change_of_variable(family);
  const auto [c1, c2] = detail::ground_coefficients(family, Flavor::w);
  WeightedFunction psi = ground_weight(c1, c2, map);
  if (k == 0) return psi;
  const NodeFactor d = log_derivative_split(build_cf(family, k, Flavor::w), ground_superpotential(family, Flavor::w),
                                            map.metric());
  psi.rational = RationalFunction(d.nodes);
  psi.binomial_exp += Rational(d.metric_power);
  return psi;
}

/// k-th eigenfunction of H^(n), written in the extension's variable.
inline WeightedFunction forward_eigenfunction(const ExtendedPotential& ext, unsigned k) {
  require_valid(ext.partner_base, k);
  return family_eigenfunction(ext.partner_base, k);
}

/// exp(-Int v_n dx), the almost-kind extra ground state.
inline WeightedFunction extra_ground_state(const ExtendedPotential& ext) {
  if (ext.iso_kind != IsoKind::almost) {
    throw std::invalid_argument("extra_ground_state: strict extension has no extra ground state");
  }
  const auto [c1, c2] = detail::ground_coefficients(ext.spec, Flavor::v);
  WeightedFunction psi = ground_weight(c1, c2, ext.map());
  if (ext.n == 0) return psi;
  const NodeFactor d = log_derivative_split(ext.v, ground_superpotential(ext.spec, Flavor::v), ext.metric());
  psi.rational = RationalFunction(Polynomial::constant(Rational(1)), d.nodes);
  psi.binomial_exp -= Rational(d.metric_power);
  return psi;
}

/// Energy of level `level` of H-tilde.
inline Rational partner_energy(const ExtendedPotential& ext, unsigned level) {
  if (ext.iso_kind == IsoKind::almost) return level == 0 ? Rational(0) : forward_energy(ext, level - 1);
  return forward_energy(ext, level);
}

/// Level `level` of H-tilde: the extra ground state for level 0 of an almost
/// extension, otherwise (-d/dx + v_n) psi_k / sqrt(E) with k the matching
/// forward level.
inline WeightedFunction partner_eigenfunction(const ExtendedPotential& ext, unsigned level) {
  if (ext.iso_kind == IsoKind::almost && level == 0) return extra_ground_state(ext);
  const unsigned k = ext.iso_kind == IsoKind::almost ? level - 1 : level;
  const WeightedFunction psi = forward_eigenfunction(ext, k);
  const WeightedFunction d = psi.derivative(ext.metric());
  WeightedFunction out = psi.with_rational(ext.v.value * psi.rational - d.rational);
  out.norm_energy = forward_energy(ext, k);
  return out;
}

/// (d/dx + v_n) psi.
inline WeightedFunction apply_annihilator(const ExtendedPotential& ext, const WeightedFunction& psi) {
  const WeightedFunction d = psi.derivative(ext.metric());
  return psi.with_rational(d.rational + ext.v.value * psi.rational);
}

/// (-d^2/dx^2 + V - E) psi, exactly.
inline WeightedFunction schrodinger_residual(const WeightedFunction& psi, const RationalFunction& potential,
                                             const Rational& e, const RationalFunction& metric) {
  const WeightedFunction d2 = psi.derivative(metric).derivative(metric);
  return psi.with_rational((potential - RationalFunction(e)) * psi.rational - d2.rational);
}

// ---------------------------------------------------------------------------
// Sampling

/// A rational potential in t evaluated along x.
class PotentialSampler {
 public:
  PotentialSampler(const RationalFunction& v, VariableMap map) : f_(v), map_(std::move(map)) {}
  double operator()(double x) const { return f_(map_.y(x)); }

 private:
  FloatRationalFunction f_;
  VariableMap map_;
};

inline PotentialSampler forward_sampler(const ExtendedPotential& ext) {
  return PotentialSampler(ext.forward.total(), ext.map());
}
inline PotentialSampler tilde_sampler(const ExtendedPotential& ext) {
  return PotentialSampler(ext.tilde.total(), ext.map());
}

}  // namespace ratext
