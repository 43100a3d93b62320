#pragma once

#include <vector>

#include "ratext/exactalg/errors.hpp"
#include "ratext/exactalg/rational_function.hpp"

namespace ratext {

enum class IPrefactor { minus_i, plus_i, one };

namespace detail {

inline GaussianPolynomial at_i_times(const Polynomial& p) {
  std::vector<GaussianRational> c;
  c.reserve(p.coefficients().size());
  long k = 0;
  for (const auto& a : p.coefficients()) c.push_back(GaussianRational(a) * GaussianRational::i_pow(k++));
  return GaussianPolynomial(std::move(c));
}

inline GaussianPolynomial conj(const GaussianPolynomial& p) {
  std::vector<GaussianRational> c;
  c.reserve(p.coefficients().size());
  for (const auto& a : p.coefficients()) c.push_back(a.conj());
  return GaussianPolynomial(std::move(c));
}

inline GaussianRational prefactor_value(IPrefactor pre) {
  switch (pre) {
    case IPrefactor::minus_i: return {Rational(0), Rational(-1)};
    case IPrefactor::plus_i: return {Rational(0), Rational(1)};
    default: return {Rational(1), Rational(0)};
  }
}

}  // namespace detail

/// prefactor * f(i t) for real t, required to be a real rational function.
/// Throws ParityError when an imaginary part survives.
inline RationalFunction substitute_ix(const RationalFunction& f, IPrefactor prefactor) {
  const GaussianPolynomial n = detail::at_i_times(f.num()) * detail::prefactor_value(prefactor);
  const GaussianPolynomial d = detail::at_i_times(f.den());
  // Multiply through by conj(d) so the denominator is real.
  const GaussianPolynomial dc = detail::conj(d);
  const GaussianPolynomial top = n * dc;
  const GaussianPolynomial bottom = d * dc;
  std::vector<Rational> re;
  re.reserve(top.coefficients().size());
  for (const auto& c : top.coefficients()) {
    if (!c.is_real()) throw ParityError("substitute_ix: result has a nonzero imaginary part");
    re.push_back(c.real());
  }
  std::vector<Rational> den;
  den.reserve(bottom.coefficients().size());
  for (const auto& c : bottom.coefficients()) den.push_back(c.real());
  return RationalFunction(Polynomial(std::move(re)), Polynomial(std::move(den)));
}

/// Complex-valued prefactor * f(i t), with no realness requirement.
inline GaussianRationalFunction substitute_ix_complex(const RationalFunction& f, IPrefactor prefactor) {
  return GaussianRationalFunction(detail::at_i_times(f.num()) * detail::prefactor_value(prefactor),
                                  detail::at_i_times(f.den()));
}

}  // namespace ratext
