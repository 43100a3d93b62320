#pragma once

#include <stdexcept>
#include <string>

namespace ratext {

/// Evaluation of a rational function at a root of its denominator.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A prefactor * f(i x) substitution left a nonzero imaginary part.
class ParityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Family parameters outside the range where the requested levels exist.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ratext
