// Builds the n = 2 extension of the oscillator, prints its exact data and
// compares the finite-difference spectrum of the partner with the prediction.

#include <cstdio>
#include <iostream>

#include "ratext.hpp"

int main() {
  using namespace ratext;
  const FamilySpec osc = Harmonic{Rational(2)};
  const ExtendedPotential ext = build_extension(osc, 2);

  std::cout << "v_2(x)      = " << ext.v.value.str('x') << "\n";
  std::cout << "V^(2)(x)    = " << ext.forward.total().str('x') << "\n";
  std::cout << "Vtilde(x)   = " << ext.tilde.total().str('x') << "\n";
  std::cout << "iso kind    : " << to_string(ext.iso_kind) << "\n";

  const auto grid = numverify::make_grid(-10.0, 10.0, 4000);
  const PotentialSampler vt = tilde_sampler(ext);
  const auto numeric = numverify::eigen_lowest(numverify::discretize(vt, grid), 5, false);
  const auto exact = predict_spectrum(ext, 4);
  std::cout << "\n k   exact   numeric\n";
  for (std::size_t k = 0; k < exact.size(); ++k) {
    std::printf("%2zu %7s %12.8f\n", k, exact[k].energy.str().c_str(), numeric.eigenvalues[k]);
  }

  const WeightedFunction psi0 = extra_ground_state(ext);
  std::cout << "\nextra ground state rational part: " << psi0.rational.str('x') << " times exp("
            << psi0.gaussian << " x^2)\n";
  std::cout << "annihilated by d/dx + v_2: " << (apply_annihilator(ext, psi0).is_zero() ? "yes" : "no") << "\n";
}
