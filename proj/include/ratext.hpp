#pragma once

#include "ratext/exactalg.hpp"
#include "ratext/extender.hpp"
#include "ratext/families.hpp"
#include "ratext/io/json.hpp"
#include "ratext/numverify/tridiagonal.hpp"
#include "ratext/numverify/verify.hpp"
#include "ratext/rsfunctions.hpp"
#include "ratext/weighted_function.hpp"
