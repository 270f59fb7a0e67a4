#pragma once

#include "rmtlab/analytic.hpp"
#include "rmtlab/contour.hpp"
#include "rmtlab/ensemble.hpp"
#include "rmtlab/errors.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/random.hpp"
#include "rmtlab/specialfn.hpp"
#include "rmtlab/stats.hpp"
#include "rmtlab/zetalab.hpp"
