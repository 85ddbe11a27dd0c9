#pragma once

#include "confnat/conf_natural.hpp"
#include "confnat/errors.hpp"
#include "confnat/estimation.hpp"
#include "confnat/moebius.hpp"
#include "confnat/quadrature.hpp"
#include "confnat/rng.hpp"
#include "confnat/special_functions.hpp"
#include "confnat/wrapped_cauchy.hpp"
