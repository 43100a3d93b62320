#pragma once

#include "ratext/exactalg/continued_fraction.hpp"
#include "ratext/exactalg/errors.hpp"
#include "ratext/exactalg/gaussian.hpp"
#include "ratext/exactalg/polynomial.hpp"
#include "ratext/exactalg/rational.hpp"
#include "ratext/exactalg/rational_function.hpp"
#include "ratext/exactalg/real_roots.hpp"
#include "ratext/exactalg/substitution.hpp"
