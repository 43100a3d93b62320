#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ratext/extender.hpp"
#include "ratext/numverify/tridiagonal.hpp"

namespace ratext::numverify {

/// LHS - RHS of the Riccati identity of rs:
///   w: -f w' + w^2 - V + E_n,
///   v:  f v' + v^2 - (E_n - V(i t)),
/// with f the metric of the variable rs lives in.
inline RationalFunction riccati_residual(const RSFunction& rs) {
  const RationalFunction f = rs.metric();
  const RationalFunction& r = rs.value;
  if (rs.flavor == Flavor::w) {
    return RationalFunction(-1) * f * r.derivative() + r * r - base_potential(rs.spec).total() +
           RationalFunction(energy(rs.spec, rs.n));
  }
  return f * r.derivative() + r * r - rotated_potential(rs.spec, rs.n);
}

/// Requested grid: explicit [lo, hi] with N interior points, or automatic.
struct GridRequest {
  bool automatic = true;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t N = 4000;
};

inline constexpr double kTruncationLevel = 1e-18;
inline constexpr int kInsetSteps = 10;

namespace detail {

// Farthest x (moving from `start` in direction `dir`) where the sampled
// weight still exceeds kTruncationLevel times its maximum.
inline double truncation_point(const WeightedSampler& psi, double start, int dir) {
  double span = 1.0;
  for (int attempt = 0; attempt < 40; ++attempt, span *= 2.0) {
    const int samples = 4000;
    double peak = 0.0;
    std::vector<double> vals(samples + 1);
    for (int i = 0; i <= samples; ++i) {
      const double x = start + dir * span * (i + 0.5) / samples;
      const double v = std::abs(psi(x));
      vals[i] = std::isfinite(v) ? v : 0.0;
      peak = std::max(peak, vals[i]);
    }
    if (peak == 0.0) continue;
    if (vals.back() >= kTruncationLevel * peak) continue;
    int last = samples;
    while (last > 0 && vals[last - 1] < kTruncationLevel * peak) --last;
    return start + dir * span * (last + 0.5) / samples;
  }
  throw std::invalid_argument("grid misconfiguration: no truncation point found");
}

inline bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace detail

/// Resolves a request on the extension's domain. Infinite ends are truncated
/// where the ground weight of the forward problem drops below 1e-18; ends
/// sitting on a singular wall are moved inward by 10 h.
inline Grid resolve_grid(const ExtendedPotential& ext, const GridRequest& req) {
  const double xlo = ext.domain.x_lo();
  const double xhi = ext.domain.x_hi();
  double lo = req.lo;
  double hi = req.hi;
  if (req.automatic) {
    // Without a bound forward ground state there is no decay scale; fall back
    // to a fixed span of 20 / alpha.
    std::optional<WeightedSampler> psi0;
    try {
      psi0.emplace(forward_eigenfunction(ext, 0), ext.map());
    } catch (const ValidationError&) {
    }
    const double span = 20.0 / ext.map().alpha.to_double();
    auto reach = [&](double start, int dir) {
      return psi0 ? detail::truncation_point(*psi0, start, dir) : start + dir * span;
    };
    if (std::isfinite(xlo) && std::isfinite(xhi)) {
      lo = xlo;
      hi = xhi;
    } else if (std::isfinite(xlo)) {
      lo = xlo;
      hi = reach(xlo, 1);
    } else if (std::isfinite(xhi)) {
      hi = xhi;
      lo = reach(xhi, -1);
    } else {
      hi = reach(0.0, 1);
      lo = reach(0.0, -1);
    }
  }
  if (lo < xlo - 1e-12 * std::max(1.0, std::abs(xlo)) || hi > xhi + 1e-12 * std::max(1.0, std::abs(xhi))) {
    std::ostringstream os;
    os << "grid misconfiguration: [" << lo << ", " << hi << "] leaves the domain (" << xlo << ", " << xhi << ")";
    throw std::invalid_argument(os.str());
  }
  const bool inset_lo = std::isfinite(xlo) && detail::near(lo, xlo);
  const bool inset_hi = std::isfinite(xhi) && detail::near(hi, xhi);
  const double steps = static_cast<double>(req.N + 1) + kInsetSteps * (int(inset_lo) + int(inset_hi));
  const double h = (hi - lo) / steps;
  if (inset_lo) lo += kInsetSteps * h;
  if (inset_hi) hi -= kInsetSteps * h;
  return make_grid(lo, hi, req.N);
}

namespace detail {

// Whether `pot` blows up at the domain end t_b (nullopt: infinite t).
inline bool singular_at(const RationalFunction& pot, const std::optional<Rational>& tb) {
  if (!tb) return pot.num().degree() > pot.den().degree();
  return pot.den()(*tb).is_zero();
}

}  // namespace detail

/// `grid` with its insets removed at walls where `potential` is regular, so
/// that the Dirichlet condition sits on the wall itself.
inline Grid regular_wall_grid(const ExtendedPotential& ext, const Grid& grid, const RationalFunction& potential) {
  const bool reversed = ext.domain.map.kind == MapKind::coth;
  const auto& t_at_xlo = reversed ? ext.domain.t_hi : ext.domain.t_lo;
  const auto& t_at_xhi = reversed ? ext.domain.t_lo : ext.domain.t_hi;
  const double xlo = ext.domain.x_lo();
  const double xhi = ext.domain.x_hi();
  const double reach = (kInsetSteps + 0.5) * grid.h();
  double lo = grid.lo;
  double hi = grid.hi;
  if (std::isfinite(xlo) && lo - xlo <= reach && !detail::singular_at(potential, t_at_xlo)) lo = xlo;
  if (std::isfinite(xhi) && xhi - hi <= reach && !detail::singular_at(potential, t_at_xhi)) hi = xhi;
  return make_grid(lo, hi, grid.N);
}

struct LevelComparison {
  unsigned k = 0;
  double expected = 0.0;
  double numeric = 0.0;
  double error = 0.0;  // |numeric - expected| / max(1, |expected|)
  bool pass = false;
};

struct ResidualEntry {
  unsigned level = 0;
  bool exact_zero = false;  // symbolic (-d^2 + V~ - E) psi~ == 0
  double fd_h = 0.0;        // 3-point residual at spacing h
  double fd_h2 = 0.0;       // at h / 2
  double richardson = 0.0;  // (4 D_{h/2} - D_h) / 3
  bool pass = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Tolerances {
  double spectrum_rel = 1e-3;
  double residual = 1e-6;
  double gram = 1e-3;
};

struct VerifyOptions {
  Tolerances tol;
  Rational energy_shift;  // added to every predicted energy (negative control)
  bool corrupt = false;   // perturb v_n before the Riccati check (negative control)
};

struct VerificationReport {
  std::string case_id;
  Grid grid;
  unsigned k_max = 0;
  Tolerances tol;
  bool riccati_exact = false;
  std::vector<std::string> poles;
  IsoKind iso_claimed = IsoKind::strict;
  IsoKind iso_observed = IsoKind::strict;
  std::vector<LevelComparison> spectrum;  // H~ numeric vs prediction
  std::vector<LevelComparison> cross;     // H numeric vs H~ numeric
  std::vector<double> forward_numeric;
  std::vector<double> partner_numeric;
  std::vector<ResidualEntry> residuals;
  std::vector<std::vector<double>> gram;
  double gram_error = 0.0;
  std::vector<CheckResult> checks;

  bool pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

inline double relative_error(double numeric, double expected) {
  return std::abs(numeric - expected) / std::max(1.0, std::abs(expected));
}

namespace detail {

inline std::vector<double> sample(const std::function<double(double)>& f, const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

}  // namespace detail

/// Residuals of -psi'' + (V - E) psi on the grid interior, relative to
/// max |psi|: plain 3-point at h and h/2, and their Richardson combination.
inline ResidualEntry eigenfunction_residual(const WeightedSampler& psi, const std::function<double(double)>& potential,
                                            double e, const Grid& grid) {
  const double h = grid.h();
  const double h2 = 0.5 * h;
  double rh = 0.0, rh2 = 0.0, rr = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < grid.N; ++i) {
    const double x = grid.x(i);
    const double p = psi(x);
    const double dh = (psi(x + h) - 2.0 * p + psi(x - h)) / (h * h);
    const double dh2 = (psi(x + h2) - 2.0 * p + psi(x - h2)) / (h2 * h2);
    const double drich = (4.0 * dh2 - dh) / 3.0;
    const double vp = (potential(x) - e) * p;
    rh = std::max(rh, std::abs(vp - dh));
    rh2 = std::max(rh2, std::abs(vp - dh2));
    rr = std::max(rr, std::abs(vp - drich));
    peak = std::max(peak, std::abs(p));
  }
  ResidualEntry r;
  r.fd_h = rh / peak;
  r.fd_h2 = rh2 / peak;
  r.richardson = rr / peak;
  return r;
}

/// Numerical audit of one extension; see VerificationReport for the checks.
inline VerificationReport verify_extension(const ExtendedPotential& ext, const Grid& grid, unsigned k_max,
                                           const VerifyOptions& opt, std::string case_id = {}) {
  VerificationReport rep;
  rep.case_id = std::move(case_id);
  rep.grid = grid;
  rep.k_max = k_max;
  rep.tol = opt.tol;
  rep.iso_claimed = ext.iso_kind;
  const double tol = opt.tol.spectrum_rel;

  // (a) exact Riccati identities for v_n and w_n.
  {
    RSFunction v = ext.v;
    if (opt.corrupt) v.value = v.value + RationalFunction(1);
    const bool v_ok = riccati_residual(v).is_zero();
    const bool w_ok = riccati_residual(build_cf(ext.spec, ext.n, Flavor::w)).is_zero();
    rep.riccati_exact = v_ok && w_ok;
    rep.checks.push_back({"riccati_exact", rep.riccati_exact,
                          std::string("v_n ") + (v_ok ? "zero" : "nonzero") + ", w_n " + (w_ok ? "zero" : "nonzero")});
  }
  for (const Pole& p : pole_report(ext.v, ext.domain)) rep.poles.push_back(describe_pole(p, ext.v.variable));

  const SpectrumPrediction pred = predict_spectrum(ext, k_max);
  const PotentialSampler vt = tilde_sampler(ext);
  const PotentialSampler vf = forward_sampler(ext);
  const std::function<double(double)> vt_fn = [&](double x) { return vt(x); };
  const std::function<double(double)> vf_fn = [&](double x) { return vf(x); };

  const NumericSpectrum tilde = eigen_lowest(discretize(vt_fn, grid), pred.size(), true);
  const NumericSpectrum fwd =
      eigen_lowest(discretize(vf_fn, regular_wall_grid(ext, grid, ext.forward.total())), pred.size(), false);
  rep.partner_numeric = tilde.eigenvalues;
  rep.forward_numeric = fwd.eigenvalues;

  // (b) numeric H~ vs prediction.
  {
    bool ok = true;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const double expected = (pred[i].energy + opt.energy_shift).to_double();
      const double err = relative_error(tilde.eigenvalues[i], expected);
      rep.spectrum.push_back({pred[i].k, expected, tilde.eigenvalues[i], err, err <= tol});
      ok = ok && err <= tol;
    }
    rep.checks.push_back({"spectrum_vs_prediction", ok, "relative tolerance " + std::to_string(tol)});
  }

  // (c) H vs H~: one extra level near zero (almost) or a full match (strict).
  {
    const double scale = std::max(1.0, std::abs(pred.back().energy.to_double()));
    const bool zero_level = std::abs(tilde.eigenvalues[0]) <= tol * scale;
    rep.iso_observed = zero_level ? IsoKind::almost : IsoKind::strict;
    bool ok = rep.iso_observed == rep.iso_claimed;
    const std::size_t offset = rep.iso_claimed == IsoKind::almost ? 1 : 0;
    for (std::size_t k = 0; k + offset < tilde.eigenvalues.size(); ++k) {
      const double err = relative_error(fwd.eigenvalues[k], tilde.eigenvalues[k + offset]);
      rep.cross.push_back({static_cast<unsigned>(k), tilde.eigenvalues[k + offset], fwd.eigenvalues[k], err, err <= tol});
      ok = ok && err <= tol;
    }
    if (rep.iso_claimed == IsoKind::strict && std::abs(fwd.eigenvalues[0]) <= tol * scale) ok = false;
    rep.checks.push_back({"isospectrality", ok,
                          std::string("claimed ") + to_string(rep.iso_claimed) + ", observed " +
                              to_string(rep.iso_observed)});
  }

  // (d) closed-form eigenfunctions: exact intertwining and grid residuals.
  std::vector<std::vector<double>> samples;
  {
    bool ok = true;
    const RationalFunction vtilde = ext.tilde.total();
    for (unsigned level = 0; level < pred.size(); ++level) {
      const WeightedFunction psi = partner_eigenfunction(ext, level);
      ResidualEntry r;
      const WeightedSampler s(psi, ext.map());
      r = eigenfunction_residual(s, vt_fn, pred[level].energy.to_double(), grid);
      r.level = level;
      r.exact_zero = schrodinger_residual(psi, vtilde, pred[level].energy, ext.metric()).is_zero();
      r.pass = r.exact_zero && r.richardson <= opt.tol.residual && r.fd_h2 < r.fd_h;
      ok = ok && r.pass;
      rep.residuals.push_back(r);
      samples.push_back(detail::sample([&](double x) { return s(x); }, grid.points()));
    }
    rep.checks.push_back({"eigenfunction_residual", ok, "richardson tolerance " + std::to_string(opt.tol.residual)});
  }

  // (e) Gram matrix of the sampled eigenfunctions, each normalized on the grid.
  {
    const double h = grid.h();
    for (auto& s : samples) {
      double norm = 0.0;
      for (double c : s) norm += c * c * h;
      norm = std::sqrt(norm);
      for (double& c : s) c /= norm;
    }
    rep.gram.assign(samples.size(), std::vector<double>(samples.size(), 0.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      for (std::size_t j = 0; j < samples.size(); ++j) {
        double dot = 0.0;
        for (std::size_t m = 0; m < grid.N; ++m) dot += samples[i][m] * samples[j][m] * h;
        rep.gram[i][j] = dot;
        worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    }
    rep.gram_error = worst;
    rep.checks.push_back({"orthonormality", worst <= opt.tol.gram, "max |G - I| = " + std::to_string(worst)});
  }
  return rep;
}

/// Per-family default tolerance: smooth line problems vs singular walls.
inline double default_tolerance(const ExtendedPotential& ext) {
  const bool wall = ext.domain.lo_kind() == BoundaryKind::singular_wall || ext.domain.hi_kind() == BoundaryKind::singular_wall;
  return wall ? 1e-2 : 1e-3;
}

struct VerifyCase {
  std::string id;
  FamilySpec spec;
  unsigned n = 0;
  unsigned k_max = 0;
  GridRequest grid;
  std::optional<double> tol;
};

struct CaseOutcome {
  std::string id;
  std::optional<VerificationReport> report;
  std::string error;  // construction failure, if any

  bool pass() const { return report && report->pass(); }
};

inline CaseOutcome run_case(const VerifyCase& c, const VerifyOptions& base) {
  CaseOutcome out{c.id, std::nullopt, {}};
  try {
    const ExtendedPotential ext = build_extension(c.spec, c.n);
    VerifyOptions opt = base;
    const double tol = c.tol.value_or(default_tolerance(ext));
    opt.tol.spectrum_rel = tol;
    opt.tol.gram = tol;
    out.report = verify_extension(ext, resolve_grid(ext, c.grid), c.k_max, opt, c.id);
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

/// Runs the cases concurrently; results come back sorted by case id.
inline std::vector<CaseOutcome> run_suite(const std::vector<VerifyCase>& cases, const VerifyOptions& opt) {
  std::vector<std::future<CaseOutcome>> jobs;
  jobs.reserve(cases.size());
  for (const auto& c : cases) jobs.push_back(std::async(std::launch::async, [&c, &opt] { return run_case(c, opt); }));
  std::vector<CaseOutcome> out;
  for (auto& j : jobs) out.push_back(j.get());
  std::sort(out.begin(), out.end(), [](const CaseOutcome& a, const CaseOutcome& b) { return a.id < b.id; });
  return out;
}

/// The shipped verification suite.
inline std::vector<VerifyCase> default_suite() {
  std::vector<VerifyCase> s;
  s.push_back({"cat2_minus_5_2_n1", SecondCategory{Sign::minus, {Rational(5), Rational(2)}, Rational(1), Rational(0)},
               1, 2, {true, 0, 0, 4000}, 1e-2});
  s.push_back({"cat2_minus_8_2_n2", SecondCategory{Sign::minus, {Rational(8), Rational(2)}, Rational(1), Rational(0)},
               2, 2, {true, 0, 0, 4000}, 1e-2});
  s.push_back({"cat2_plus_6_1_n1", SecondCategory{Sign::plus, {Rational(6), Rational(1)}, Rational(1), Rational(0)},
               1, 1, {true, 0, 0, 4000}, 1e-2});
  s.push_back({"harmonic_w1_n4", Harmonic{Rational(1)}, 4, 4, {true, 0, 0, 4000}, 1e-3});
  s.push_back({"harmonic_w2_n2", Harmonic{Rational(2)}, 2, 4, {false, -10, 10, 4000}, 1e-3});
  s.push_back({"isotonic_w1_l2_n2", Isotonic{Rational(1), Rational(2)}, 2, 3, {true, 0, 0, 4000}, 1e-2});
  s.push_back({"isotonic_w2_l1_n1", Isotonic{Rational(2), Rational(1)}, 1, 3, {false, 0, 12, 4000}, 1e-2});
  return s;
}

}  // namespace ratext::numverify
