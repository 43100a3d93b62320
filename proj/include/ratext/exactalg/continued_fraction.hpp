#pragma once

#include <stdexcept>
#include <vector>

#include "ratext/exactalg/rational_function.hpp"

namespace ratext {

/// One partial quotient p / (d + ...) of a terminating continued fraction.
struct CFPartial {
  Rational numerator;
  RationalFunction denominator;
};

/// Folds base + p1/(d1 + p2/(d2 + ... + pn/dn)) from the innermost partial
/// outward. A denominator that is identically zero is an error; pointwise
/// zeros become poles of the result.
inline RationalFunction cf_fold(const RationalFunction& base, const std::vector<CFPartial>& partials) {
  RationalFunction tail;
  for (auto it = partials.rbegin(); it != partials.rend(); ++it) {
    const RationalFunction d = it->denominator + tail;
    if (d.is_zero()) throw std::domain_error("cf_fold: identically zero partial denominator");
    tail = RationalFunction(it->numerator) / d;
  }
  return base + tail;
}

}  // namespace ratext
