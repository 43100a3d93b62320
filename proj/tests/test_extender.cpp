#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace ratext;

namespace {

const RationalFunction X = RationalFunction::identity();
const RationalFunction ONE(1);

RationalFunction c(long p, long q = 1) { return RationalFunction(Rational(p, q)); }

SecondCategory cat2(Sign s, long lambda, long mu, long alpha = 1) {
  return SecondCategory{s, {Rational(lambda), Rational(mu)}, Rational(alpha), Rational(0), Branch::tanh};
}

struct Case {
  FamilySpec spec;
  unsigned n;
  unsigned levels;  // partner levels exercised
};

std::vector<Case> regular_cases() {
  return {
      {Harmonic{Rational(2)}, 0, 5},
      {Harmonic{Rational(2)}, 2, 5},
      {Harmonic{Rational(1)}, 4, 5},
      {Harmonic{Rational(3, 2)}, 6, 4},
      {Isotonic{Rational(2), Rational(1)}, 1, 4},
      {Isotonic{Rational(1), Rational(2)}, 2, 4},
      {Isotonic{Rational(3), Rational(1, 2)}, 3, 3},
      {cat2(Sign::minus, 5, 2), 1, 3},
      {cat2(Sign::minus, 8, 2), 2, 3},
      {cat2(Sign::minus, 12, 3), 1, 4},
      {cat2(Sign::plus, 6, 1), 1, 2},
      {cat2(Sign::plus, 9, 2), 1, 2},
  };
}

// Sign changes of f on an evenly spaced interior grid of (lo, hi).
int sign_changes(const std::function<double(double)>& f, double lo, double hi, int points = 4000) {
  int changes = 0;
  double prev = 0.0;
  for (int i = 1; i < points; ++i) {
    const double v = f(lo + (hi - lo) * i / points);
    if (v != 0.0 && prev != 0.0 && (v < 0) != (prev < 0)) ++changes;
    if (v != 0.0) prev = v;
  }
  return changes;
}

}  // namespace

TEST(ForwardPotential, Examples) {
  EXPECT_EQ(forward_potential(Harmonic{Rational(2)}, 2).record.total(), X * X + c(5));
  EXPECT_EQ(forward_potential(Isotonic{Rational(2), Rational(1)}, 1).record.total(),
            X * X + c(2) / (X * X) + c(9));
  const ForwardPotential f = forward_potential(cat2(Sign::minus, 5, 2), 1);
  EXPECT_EQ(f.shift, Rational(63));
  EXPECT_EQ(f.base, FamilySpec{cat2(Sign::plus, 6, 2)});
  EXPECT_EQ(f.record.rational, c(30) * X * X + c(2) / (X * X));
  // lambda0_+(6, 2) = -8 - 24
  EXPECT_EQ(f.record.constant, Rational(-32 + 63));
}

TEST(ForwardPotential, MatchesRotatedPotential) {
  for (const Case& cs : regular_cases()) {
    EXPECT_EQ(forward_potential(cs.spec, cs.n).record.total(), rotated_potential(cs.spec, cs.n)) << describe(cs.spec);
  }
}

TEST(BuildExtension, CprsPotential) {
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 2);
  const RationalFunction q = c(2) * X * X + ONE;
  EXPECT_EQ(ext.tilde.total(), X * X + c(3) + c(8) / q - c(16) / (q * q));
  EXPECT_EQ(ext.v.value, X + c(4) * X / q);
  EXPECT_EQ(ext.iso_kind, IsoKind::almost);
  EXPECT_DOUBLE_EQ(tilde_sampler(ext)(0.0), -5.0);
}

TEST(BuildExtension, GroundLevelGivesShiftedOscillator) {
  // 2 v_0^2 - V^(0) = 2x^2 - (x^2 + 1).
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 0);
  EXPECT_EQ(ext.tilde.total(), X * X - ONE);
  EXPECT_DOUBLE_EQ(tilde_sampler(ext)(1.0), 0.0);
}

TEST(BuildExtension, RefusesInteriorPoles) {
  try {
    build_extension(Harmonic{Rational(2)}, 1);
    FAIL() << "expected refusal";
  } catch (const ExtensionRefused& e) {
    EXPECT_NE(std::string(e.what()).find("pole at x = 0"), std::string::npos);
    ASSERT_EQ(e.poles().size(), 1u);
    EXPECT_EQ(*e.poles()[0].residue, Rational(1));
  }
  for (unsigned n : {3u, 5u, 7u}) EXPECT_THROW(build_extension(Harmonic{Rational(1)}, n), ExtensionRefused);
}

TEST(BuildExtension, FactorizationIdentity) {
  for (const Case& cs : regular_cases()) {
    const ExtendedPotential ext = build_extension(cs.spec, cs.n);
    EXPECT_EQ(ext.forward.total() - ext.tilde.total(), c(2) * ext.metric() * ext.v.value.derivative());
    EXPECT_EQ(ext.tilde.total(), c(2) * ext.v.value * ext.v.value - ext.forward.total());
  }
}

TEST(PredictSpectrum, Examples) {
  auto energies = [](const FamilySpec& s, unsigned n, unsigned k) {
    std::vector<Rational> out;
    for (const auto& e : predict_spectrum(build_extension(s, n), k)) out.push_back(e.energy);
    return out;
  };
  const std::vector<Rational> h{0, 6, 8, 10, 12};
  EXPECT_EQ(energies(Harmonic{Rational(2)}, 2, 4), h);
  const std::vector<Rational> i{14, 18, 22, 26};
  EXPECT_EQ(energies(Isotonic{Rational(2), Rational(1)}, 1, 3), i);
  const std::vector<Rational> p{63, 99, 143};
  EXPECT_EQ(energies(cat2(Sign::minus, 5, 2), 1, 2), p);
  EXPECT_THROW(predict_spectrum(build_extension(cat2(Sign::plus, 6, 1), 1), 5), ValidationError);
}

TEST(PredictSpectrum, IncreasingAndGapFormula) {
  for (const Case& cs : regular_cases()) {
    const ExtendedPotential ext = build_extension(cs.spec, cs.n);
    const SpectrumPrediction pred = predict_spectrum(ext, cs.levels - 1);
    ASSERT_EQ(pred.size(), cs.levels);
    for (std::size_t k = 1; k < pred.size(); ++k) EXPECT_LT(pred[k - 1].energy, pred[k].energy);
    for (std::size_t k = 0; k < pred.size(); ++k) EXPECT_EQ(pred[k].k, k);
    if (ext.iso_kind == IsoKind::almost) {
      EXPECT_EQ(pred[0].energy, Rational(0));
      EXPECT_EQ(pred[1].energy - pred[0].energy, energy(cs.spec, cs.n) + *shift_delta(cs.spec));
    }
  }
}

TEST(Normalizability, Classification) {
  EXPECT_EQ(build_extension(Harmonic{Rational(2)}, 2).iso_kind, IsoKind::almost);
  EXPECT_EQ(build_extension(Harmonic{Rational(5, 3)}, 4).iso_kind, IsoKind::almost);
  for (long l = 0; l <= 3; ++l) {
    for (unsigned n = 0; n <= 3; ++n) {
      EXPECT_EQ(build_extension(Isotonic{Rational(2), Rational(l)}, n).iso_kind, IsoKind::strict);
    }
  }
  EXPECT_EQ(build_extension(cat2(Sign::minus, 5, 2), 1).iso_kind, IsoKind::strict);
  EXPECT_EQ(build_extension(cat2(Sign::plus, 6, 1), 1).iso_kind, IsoKind::strict);
  EXPECT_NE(build_extension(Isotonic{Rational(2), Rational(1)}, 1).iso_justification.find("strict"),
            std::string::npos);
}

TEST(Normalizability, EndRules) {
  using detail::EndBehaviour;
  std::string why;
  // Finite wall, simple pole: exp(-Int C/x) = x^{-C}.
  EndBehaviour e;
  e.finite_x = true;
  e.order = 1;
  e.coefficient = 0.25;
  EXPECT_TRUE(detail::end_normalizable(e, 1, why));
  e.coefficient = 0.75;
  EXPECT_FALSE(detail::end_normalizable(e, 1, why));
  // Double pole C / x^2 at a lower wall: weight exp(C / x) needs C < 0.
  e.order = 2;
  e.coefficient = -1.0;
  EXPECT_TRUE(detail::end_normalizable(e, 1, why));
  e.coefficient = 1.0;
  EXPECT_FALSE(detail::end_normalizable(e, 1, why));
  // v ~ C x at either infinity: Gaussian weight for C > 0.
  EndBehaviour inf;
  inf.finite_x = false;
  inf.order = 1;
  inf.coefficient = 1.0;
  EXPECT_TRUE(detail::end_normalizable(inf, 1, why));
  EXPECT_TRUE(detail::end_normalizable(inf, -1, why));
  inf.coefficient = -1.0;
  EXPECT_FALSE(detail::end_normalizable(inf, -1, why));
  // v ~ C / x at +infinity: x^{-C} is square integrable iff C > 1/2.
  inf.order = -1;
  inf.coefficient = 0.75;
  EXPECT_TRUE(detail::end_normalizable(inf, -1, why));
  inf.coefficient = 0.25;
  EXPECT_FALSE(detail::end_normalizable(inf, -1, why));
  // Decaying v leaves a constant weight.
  inf.order = -2;
  EXPECT_FALSE(detail::end_normalizable(inf, -1, why));
}

TEST(PartnerEigenfunction, HarmonicExamples) {
  const ExtendedPotential ext = build_extension(Harmonic{Rational(2)}, 2);
  const RationalFunction q = c(2) * X * X + ONE;
  const WeightedFunction psi0 = partner_eigenfunction(ext, 0);
  EXPECT_EQ(psi0.gaussian, Rational(-1, 2));
  const RationalFunction ratio0 = psi0.rational / (ONE / q);
  EXPECT_TRUE(ratio0.is_polynomial() && ratio0.num().degree() == 0);
  const WeightedFunction psi1 = partner_eigenfunction(ext, 1);
  EXPECT_EQ(psi1.gaussian, Rational(-1, 2));
  const RationalFunction ratio1 = psi1.rational / (c(2) * X + c(4) * X / q);
  EXPECT_TRUE(ratio1.is_polynomial() && ratio1.num().degree() == 0);
  EXPECT_EQ(psi1.norm_energy, Rational(6));
  EXPECT_THROW(extra_ground_state(build_extension(Isotonic{Rational(2), Rational(1)}, 1)), std::invalid_argument);
}

TEST(PartnerEigenfunction, BetaZeroWeightIsOne) {
  WeightedFunction w;
  w.rational = ONE;
  EXPECT_EQ(w.weight(0.7), 1.0);
  EXPECT_EQ(w.at(-3.2), 1.0);
}

TEST(PartnerEigenfunction, AnnihilatorKillsExtraGroundState) {
  for (const Case& cs : regular_cases()) {
    const ExtendedPotential ext = build_extension(cs.spec, cs.n);
    if (ext.iso_kind != IsoKind::almost) continue;
    EXPECT_TRUE(apply_annihilator(ext, extra_ground_state(ext)).is_zero());
  }
}

TEST(PartnerEigenfunction, IntertwiningIsExact) {
  for (const Case& cs : regular_cases()) {
    const ExtendedPotential ext = build_extension(cs.spec, cs.n);
    const SpectrumPrediction pred = predict_spectrum(ext, cs.levels - 1);
    for (unsigned level = 0; level < cs.levels; ++level) {
      const WeightedFunction psi = partner_eigenfunction(ext, level);
      EXPECT_EQ(partner_energy(ext, level), pred[level].energy);
      EXPECT_TRUE(schrodinger_residual(psi, ext.tilde.total(), pred[level].energy, ext.metric()).is_zero())
          << describe(cs.spec) << " n=" << cs.n << " level " << level;
      if (ext.iso_kind == IsoKind::almost && level == 0) continue;
      const unsigned k = ext.iso_kind == IsoKind::almost ? level - 1 : level;
      EXPECT_TRUE(
          schrodinger_residual(forward_eigenfunction(ext, k), ext.forward.total(), forward_energy(ext, k), ext.metric())
              .is_zero());
    }
  }
}

TEST(PartnerEigenfunction, NodeCountFollowsLevel) {
  for (const Case& cs : regular_cases()) {
    const ExtendedPotential ext = build_extension(cs.spec, cs.n);
    const VariableMap map = ext.map();
    const double lo = std::isinf(ext.domain.x_lo()) ? -12.0 : ext.domain.x_lo();
    const double hi = std::isinf(ext.domain.x_hi()) ? 12.0 : ext.domain.x_hi();
    int prev = -1;
    for (unsigned level = 0; level < cs.levels; ++level) {
      const WeightedSampler psi(partner_eigenfunction(ext, level), map);
      const int nodes = sign_changes([&](double x) { return psi(x); }, lo, hi);
      EXPECT_EQ(nodes, static_cast<int>(level)) << describe(cs.spec) << " level " << level;
      EXPECT_GT(nodes, prev);
      prev = nodes;
    }
  }
}
