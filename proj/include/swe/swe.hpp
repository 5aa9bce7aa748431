#pragma once

#include "swe/core.hpp"
#include "swe/error.hpp"
#include "swe/godunov.hpp"
#include "swe/numerics.hpp"
#include "swe/problem.hpp"
#include "swe/riemann.hpp"
#include "swe/stationary_contact.hpp"
#include "swe/wave_curves.hpp"
