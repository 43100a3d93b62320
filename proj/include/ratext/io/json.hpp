#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <json.hpp>

#include "ratext/extender.hpp"
#include "ratext/numverify/verify.hpp"

namespace ratext::io {

using nlohmann::ordered_json;
using Json = ordered_json;

/// Floats are emitted with 15 significant digits; non-finite values as strings.
inline Json number15(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

inline double read_number(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("expected a number, got \"" + s + "\"");
  }
  return j.get<double>();
}

/// The same 15-digit formatting for text output.
inline std::string format15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Exact algebra

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string, got " + j.dump());
}

inline Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(c.str());
  return a;
}

inline Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a coefficient array");
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return Polynomial(std::move(c));
}

inline Json to_json(const RationalFunction& f) {
  Json j;
  j["num"] = to_json(f.num());
  j["den"] = to_json(f.den());
  return j;
}

inline RationalFunction rational_function_from_json(const Json& j) {
  return RationalFunction(polynomial_from_json(j.at("num")), polynomial_from_json(j.at("den")));
}

// ---------------------------------------------------------------------------
// Families

inline Json to_json(const FamilySpec& spec) {
  Json j;
  if (const auto* h = std::get_if<Harmonic>(&spec)) {
    j["family"] = "harmonic";
    j["omega"] = to_json(h->omega);
  } else if (const auto* i = std::get_if<Isotonic>(&spec)) {
    j["family"] = "isotonic";
    j["omega"] = to_json(i->omega);
    j["l"] = to_json(i->l);
  } else {
    const auto& c = std::get<SecondCategory>(spec);
    j["family"] = "cat2";
    j["sign"] = to_string(c.sign);
    j["lambda"] = to_json(c.a.lambda);
    j["mu"] = to_json(c.a.mu);
    j["alpha"] = to_json(c.alpha);
    j["phi0"] = to_json(c.phi0);
    j["branch"] = to_string(c.branch);
  }
  return j;
}

inline Sign sign_from_string(const std::string& s) {
  if (s == "plus" || s == "+") return Sign::plus;
  if (s == "minus" || s == "-") return Sign::minus;
  throw std::invalid_argument("unknown sign '" + s + "' (expected plus or minus)");
}

inline Branch branch_from_string(const std::string& s) {
  if (s == "tanh") return Branch::tanh;
  if (s == "coth") return Branch::coth;
  throw std::invalid_argument("unknown branch '" + s + "' (expected tanh or coth)");
}

inline FamilySpec family_from_json(const Json& j) {
  const std::string f = j.at("family").get<std::string>();
  auto get = [&](const char* key, const char* fallback) {
    if (j.contains(key)) return rational_from_json(j.at(key));
    if (fallback) return Rational::parse(fallback);
    throw std::invalid_argument(std::string("missing field '") + key + "' for family " + f);
  };
  if (f == "harmonic") return Harmonic{get("omega", nullptr)};
  if (f == "isotonic") return Isotonic{get("omega", nullptr), get("l", nullptr)};
  if (f == "cat2") {
    SecondCategory c;
    c.sign = sign_from_string(j.at("sign").get<std::string>());
    c.a = {get("lambda", nullptr), get("mu", nullptr)};
    c.alpha = get("alpha", "1");
    c.phi0 = get("phi0", "0");
    c.branch = j.contains("branch") ? branch_from_string(j.at("branch").get<std::string>()) : Branch::tanh;
    return c;
  }
  throw std::invalid_argument("unknown family '" + f + "' (expected harmonic, isotonic or cat2)");
}

// ---------------------------------------------------------------------------
// RS functions, domains, extensions

inline Json to_json(const RSFunction& rs) {
  Json j;
  j["spec"] = to_json(rs.spec);
  j["n"] = rs.n;
  j["flavor"] = to_string(rs.flavor);
  j["variable"] = to_string(rs.variable);
  j["num"] = to_json(rs.value.num());
  j["den"] = to_json(rs.value.den());
  return j;
}

inline RSFunction rs_function_from_json(const Json& j) {
  RSFunction rs;
  rs.spec = family_from_json(j.at("spec"));
  rs.n = j.at("n").get<unsigned>();
  const std::string fl = j.at("flavor").get<std::string>();
  if (fl != "w" && fl != "v") throw std::invalid_argument("unknown flavor '" + fl + "'");
  rs.flavor = fl == "w" ? Flavor::w : Flavor::v;
  rs.variable = j.at("variable").get<std::string>() == "y" ? Variable::y : Variable::x;
  rs.value = RationalFunction(polynomial_from_json(j.at("num")), polynomial_from_json(j.at("den")));
  return rs;
}

inline MapKind map_kind_from_string(const std::string& s) {
  if (s == "identity") return MapKind::identity;
  if (s == "tan") return MapKind::tan;
  if (s == "tanh") return MapKind::tanh;
  if (s == "coth") return MapKind::coth;
  throw std::invalid_argument("unknown map kind '" + s + "'");
}

inline Json to_json(const DomainSpec& d) {
  Json j;
  j["map"] = {{"kind", to_string(d.map.kind)}, {"alpha", to_json(d.map.alpha)}, {"phi0", to_json(d.map.phi0)}};
  j["t_lo"] = d.t_lo ? to_json(*d.t_lo) : Json("-inf");
  j["t_hi"] = d.t_hi ? to_json(*d.t_hi) : Json("inf");
  j["x_lo"] = number15(d.x_lo());
  j["x_hi"] = number15(d.x_hi());
  j["lo_kind"] = to_string(d.lo_kind());
  j["hi_kind"] = to_string(d.hi_kind());
  return j;
}

inline DomainSpec domain_from_json(const Json& j) {
  DomainSpec d;
  const Json& m = j.at("map");
  d.map = {map_kind_from_string(m.at("kind").get<std::string>()), rational_from_json(m.at("alpha")),
           rational_from_json(m.at("phi0"))};
  auto bound = [](const Json& b) -> std::optional<Rational> {
    if (b.is_string() && (b == "inf" || b == "-inf")) return std::nullopt;
    return rational_from_json(b);
  };
  d.t_lo = bound(j.at("t_lo"));
  d.t_hi = bound(j.at("t_hi"));
  return d;
}

inline Json to_json(const SpectrumPrediction& s) {
  Json a = Json::array();
  for (const auto& e : s) {
    a.push_back({{"k", e.k}, {"energy", to_json(e.energy)}, {"value", number15(e.energy.to_double())},
                 {"provenance", e.provenance}});
  }
  return a;
}

/// Extension export; `k_max` controls how much spectrum is attached.
inline Json to_json(const ExtendedPotential& ext, unsigned k_max) {
  Json j;
  j["spec"] = to_json(ext.spec);
  j["n"] = ext.n;
  j["v_n"] = to_json(ext.v);
  j["V_forward"] = {{"rational", to_json(ext.forward.rational)},
                    {"constant", to_json(ext.forward.constant)},
                    {"base_family", to_json(ext.partner_base)},
                    {"shift", to_json(ext.forward_shift)}};
  j["V_tilde"] = {{"rational", to_json(ext.tilde.rational)},
                  {"constant", to_json(ext.tilde.constant)},
                  {"base_family_bar", to_json(ext.partner_base)}};
  j["iso_kind"] = to_string(ext.iso_kind);
  j["iso_justification"] = ext.iso_justification;
  Json spectrum = Json::array();
  try {
    spectrum = to_json(predict_spectrum(ext, k_max));
  } catch (const ValidationError&) {
    // The partner family has fewer bound levels than requested.
  }
  j["spectrum"] = spectrum;
  j["domain"] = to_json(ext.domain);
  return j;
}

inline ExtendedPotential extension_from_json(const Json& j) {
  ExtendedPotential ext;
  ext.spec = family_from_json(j.at("spec"));
  ext.n = j.at("n").get<unsigned>();
  ext.v = rs_function_from_json(j.at("v_n"));
  const Json& f = j.at("V_forward");
  ext.partner_base = family_from_json(f.at("base_family"));
  ext.forward_shift = rational_from_json(f.at("shift"));
  ext.forward = {rational_function_from_json(f.at("rational")), rational_from_json(f.at("constant")), ext.partner_base};
  const Json& t = j.at("V_tilde");
  ext.tilde = {rational_function_from_json(t.at("rational")), rational_from_json(t.at("constant")),
               family_from_json(t.at("base_family_bar"))};
  const std::string kind = j.at("iso_kind").get<std::string>();
  if (kind != "strict" && kind != "almost") throw std::invalid_argument("unknown iso_kind '" + kind + "'");
  ext.iso_kind = kind == "almost" ? IsoKind::almost : IsoKind::strict;
  ext.iso_justification = j.value("iso_justification", std::string());
  ext.domain = domain_from_json(j.at("domain"));
  return ext;
}

// ---------------------------------------------------------------------------
// Verification reports

inline Json to_json(const numverify::LevelComparison& c) {
  return {{"k", c.k}, {"expected", number15(c.expected)}, {"numeric", number15(c.numeric)},
          {"rel_error", number15(c.error)}, {"pass", c.pass}};
}

inline Json to_json(const numverify::VerificationReport& r) {
  Json j;
  j["case"] = r.case_id;
  j["pass"] = r.pass();
  j["grid"] = {{"lo", number15(r.grid.lo)}, {"hi", number15(r.grid.hi)}, {"N", r.grid.N}, {"h", number15(r.grid.h())}};
  j["k_max"] = r.k_max;
  j["tolerances"] = {{"spectrum_rel", number15(r.tol.spectrum_rel)},
                     {"residual", number15(r.tol.residual)},
                     {"gram", number15(r.tol.gram)}};
  j["riccati_exact"] = r.riccati_exact;
  j["poles"] = r.poles;
  j["iso_kind"] = {{"claimed", to_string(r.iso_claimed)}, {"observed", to_string(r.iso_observed)}};
  Json spec = Json::array();
  for (const auto& c : r.spectrum) spec.push_back(to_json(c));
  j["spectrum"] = spec;
  Json cross = Json::array();
  for (const auto& c : r.cross) cross.push_back(to_json(c));
  j["cross"] = cross;
  Json res = Json::array();
  for (const auto& e : r.residuals) {
    res.push_back({{"level", e.level}, {"exact_zero", e.exact_zero}, {"fd_h", number15(e.fd_h)},
                   {"fd_h2", number15(e.fd_h2)}, {"richardson", number15(e.richardson)}, {"pass", e.pass}});
  }
  j["residuals"] = res;
  j["gram_max_error"] = number15(r.gram_error);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  return j;
}

inline Json to_json(const numverify::CaseOutcome& o) {
  if (o.report) return to_json(*o.report);
  return {{"case", o.id}, {"pass", false}, {"error", o.error}};
}

}  // namespace ratext::io
