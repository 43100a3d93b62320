// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ratext.hpp"

using namespace ratext;
using namespace ratext::numverify;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

SecondCategory cat2(Sign s, long lambda, long mu) {
  return SecondCategory{s, {Rational(lambda), Rational(mu)}, Rational(1), Rational(0), Branch::tanh};
}

// Families and level ranges of criteria 1 and 2.
std::vector<std::pair<FamilySpec, unsigned>> exact_cases() {
  std::vector<std::pair<FamilySpec, unsigned>> out;
  for (const Rational& w : {Rational(1), Rational(2), Rational(5, 2)}) out.push_back({Harmonic{w}, 8});
  for (long l = 0; l <= 2; ++l) out.push_back({Isotonic{Rational(2), Rational(l)}, 8});
  out.push_back({cat2(Sign::plus, 2, 1), 8});
  unsigned n_minus = 0;
  while (validate_params(cat2(Sign::minus, 5, 2), n_minus + 1)) ++n_minus;
  out.push_back({cat2(Sign::minus, 5, 2), n_minus});
  return out;
}

std::vector<double> lowest(const RationalFunction& potential, const VariableMap& map, const Grid& g, std::size_t count) {
  const PotentialSampler s(potential, map);
  return eigen_lowest(discretize([&](double x) { return s(x); }, g), count, false).eigenvalues;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << io::format15(v[i]);
  return os.str();
}

void criterion1() {
  int checked = 0, nonzero = 0;
  for (const auto& [spec, n_max] : exact_cases()) {
    for (unsigned n = 0; n <= n_max; ++n) {
      for (Flavor f : {Flavor::w, Flavor::v}) {
        ++checked;
        if (!riccati_residual(build_cf(spec, n, f)).is_zero()) ++nonzero;
      }
    }
  }
  report(1, nonzero == 0, std::to_string(checked) + " Riccati residuals, " + std::to_string(nonzero) + " nonzero");
}

void criterion2() {
  int checked = 0, mismatched = 0;
  for (const auto& [spec, n_max] : exact_cases()) {
    for (unsigned n = 0; n <= n_max; ++n) {
      for (Flavor f : {Flavor::w, Flavor::v}) {
        ++checked;
        if (!(build_cf(spec, n, f).value == build_recurrence(spec, n, f).value)) ++mismatched;
      }
    }
  }
  report(2, mismatched == 0, std::to_string(checked) + " CF/recurrence pairs, " + std::to_string(mismatched) + " differ");
}

void criterion3() {
  const RationalFunction x = RationalFunction::identity();
  const RationalFunction q = RationalFunction(2) * x * x + RationalFunction(1);
  // Oracle: v_2 and V^(2) written out by hand, expanded without the builder.
  const RationalFunction v2 = x + RationalFunction(4) * x / q;
  const RationalFunction oracle = RationalFunction(2) * v2 * v2 - (x * x + RationalFunction(5));
  const RationalFunction cprs = x * x + RationalFunction(8) * (RationalFunction(2) * x * x - RationalFunction(1)) / (q * q);
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 2);
  const RationalFunction diff = ext.tilde.total() - cprs;
  const bool ok = oracle == ext.tilde.total() && diff == RationalFunction(3);
  report(3, ok, "Vtilde - CPRS = " + diff.str('x') + (oracle == ext.tilde.total() ? "" : " (oracle mismatch)"));
}

const double kHarmonicExpected[] = {0, 6, 8, 10, 12};

// Worst |numeric - exact| over the five levels of criterion 4 on N points.
double harmonic_worst_error(const ExtendedPotential& ext, std::size_t N, std::vector<double>* numeric = nullptr) {
  const auto e = lowest(ext.tilde.total(), ext.map(), make_grid(-10.0, 10.0, N), 5);
  if (numeric) *numeric = e;
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) worst = std::max(worst, std::abs(e[k] - kHarmonicExpected[k]));
  return worst;
}

void criterion4() {
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 2);
  std::vector<double> e;
  harmonic_worst_error(ext, 4000, &e);
  bool levels = true;
  for (int k = 0; k < 5; ++k) levels = levels && std::abs(e[k] - kHarmonicExpected[k]) <= 1e-3 * std::max(1.0, kHarmonicExpected[k]);
  const PotentialSampler vt = tilde_sampler(ext);
  const WeightedSampler psi0(extra_ground_state(ext), ext.map());
  const ResidualEntry r =
      eigenfunction_residual(psi0, [&](double t) { return vt(t); }, 0.0, make_grid(-10.0, 10.0, 4000));
  const bool residual = r.richardson <= 1e-6 && r.fd_h2 < r.fd_h;
  std::ostringstream os;
  os << "levels {" << join(e) << "}; ground-state residual h " << r.fd_h << ", h/2 " << r.fd_h2 << ", extrapolated "
     << r.richardson;
  report(4, levels && residual && ext.iso_kind == IsoKind::almost, os.str());
}

void criterion5() {
  try {
    build_extension(Harmonic{Rational(2)}, 1);
    report(5, false, "extension was not refused");
  } catch (const ExtensionRefused& e) {
    const std::string msg = e.what();
    const bool at_origin = msg.find("pole at x = 0") != std::string::npos;
    report(5, at_origin, msg);
  }
}

void criterion6() {
  const ExtendedPotential ext = build_extension(Isotonic{Rational(2), Rational(1)}, 1);
  const Grid g = resolve_grid(ext, GridRequest{false, 0.0, 12.0, 4000});
  const auto e = lowest(ext.tilde.total(), ext.map(), g, 4);
  const double expected[] = {14, 18, 22, 26};
  bool ok = ext.iso_kind == IsoKind::strict;
  for (int k = 0; k < 4; ++k) ok = ok && std::abs(e[k] - expected[k]) <= 1e-2 * expected[k];
  ok = ok && e[0] >= 13.0;
  report(6, ok, "grid (" + io::format15(g.lo) + ", 12], levels {" + join(e) + "}");
}

void criterion7() {
  const ExtendedPotential ext = build_extension(cat2(Sign::minus, 5, 2), 1);
  const Grid g = resolve_grid(ext, GridRequest{false, 0.0, std::numbers::pi / 2, 4000});
  const auto et = lowest(ext.tilde.total(), ext.map(), g, 3);
  const auto ef = lowest(ext.forward.total(), ext.map(), regular_wall_grid(ext, g, ext.forward.total()), 3);
  const double expected[] = {63, 99, 143};
  bool ok = ext.iso_kind == IsoKind::strict;
  for (int k = 0; k < 3; ++k) {
    ok = ok && std::abs(et[k] - expected[k]) <= 1e-2 * expected[k];
    ok = ok && std::abs(ef[k] - et[k]) <= 1e-2 * std::abs(et[k]);
  }
  report(7, ok, "H~ {" + join(et) + "}, H {" + join(ef) + "}");
}

void criterion8() {
  const FamilySpec osc = Harmonic{Rational(2)};
  bool parity = true, poles = true;
  for (unsigned n = 0; n <= 8; ++n) {
    const RSFunction v = build_cf(osc, n, Flavor::v);
    parity = parity && v.value.reflected() == RationalFunction(-1) * v.value;
    const RootIsolation r = real_roots(v.value.den());
    if (n % 2 == 0) {
      poles = poles && r.count == 0;
    } else {
      poles = poles && r.count == 1 && r.roots[0].lo <= Rational(0) && Rational(0) <= r.roots[0].hi &&
              v.value.den()(Rational(0)).is_zero();
    }
  }
  bool iso = true;
  for (long l = 0; l <= 2; ++l) {
    for (unsigned n = 0; n <= 8; ++n) {
      const RSFunction v = build_cf(Isotonic{Rational(2), Rational(l)}, n, Flavor::v);
      iso = iso && real_roots(v.value.den(), Interval::above(Rational(0))).count == 0;
    }
  }
  report(8, parity && poles && iso,
         std::string("odd parity ") + (parity ? "ok" : "broken") + ", harmonic pole counts " + (poles ? "ok" : "wrong") +
             ", isotonic poles on (0, inf) " + (iso ? "none" : "found"));
}

void criterion9() {
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 2);
  // h = 20 / (N + 1): 4000 -> 8001 halves it.
  const double coarse = harmonic_worst_error(ext, 4000);
  const double fine = harmonic_worst_error(ext, 8001);
  const double ratio = coarse / fine;
  std::ostringstream os;
  os << "worst error " << coarse << " -> " << fine << ", ratio " << ratio;
  report(9, ratio >= 3.0 && ratio <= 5.0, os.str());
}

void criterion10() {
  // Corrupt each coefficient of every v_n from criterion 1.
  int corruptions = 0, caught = 0;
  for (const auto& [spec, n_max] : exact_cases()) {
    for (unsigned n = 0; n <= n_max; ++n) {
      const RSFunction v = build_cf(spec, n, Flavor::v);
      auto coeffs = v.value.num().coefficients();
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        auto c = coeffs;
        c[i] += Rational(1);
        RSFunction bad = v;
        bad.value = RationalFunction(Polynomial(c), v.value.den());
        ++corruptions;
        if (!riccati_residual(bad).is_zero()) ++caught;
      }
    }
  }
  // Shift each predicted level of criterion 4 by omega / 10.
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 2);
  std::vector<double> e;
  harmonic_worst_error(ext, 4000, &e);
  const double shift = 0.2;
  int shifted = 0, detected = 0;
  for (int k = 0; k < 5; ++k) {
    const double target = kHarmonicExpected[k] + shift;
    ++shifted;
    if (std::abs(e[k] - target) > 1e-3 * std::max(1.0, target)) ++detected;
  }
  std::ostringstream os;
  os << caught << "/" << corruptions << " corruptions break criterion 1; " << detected << "/" << shifted
     << " shifted levels break criterion 4";
  report(10, caught == corruptions && detected == shifted, os.str());
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                   criterion6, criterion7, criterion8, criterion9, criterion10};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& ex) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + ex.what());
    }
  }
  std::printf("%s: %d of %zu criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
