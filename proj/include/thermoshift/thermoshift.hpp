#pragma once

// Umbrella header for the library.

#include "thermoshift/algebra.hpp"
#include "thermoshift/beta_lang.hpp"
#include "thermoshift/conformal.hpp"
#include "thermoshift/error.hpp"
#include "thermoshift/gibbs.hpp"
#include "thermoshift/measure.hpp"
#include "thermoshift/oracle.hpp"
#include "thermoshift/potential.hpp"
#include "thermoshift/shift_space.hpp"
#include "thermoshift/thermo.hpp"
