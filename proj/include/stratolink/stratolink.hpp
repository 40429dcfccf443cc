#pragma once

// Umbrella header for the stratolink HAPS network simulator.

#include "stratolink/atmosphere.hpp"
#include "stratolink/errors.hpp"
#include "stratolink/geometry.hpp"
#include "stratolink/io.hpp"
#include "stratolink/link_budget.hpp"
#include "stratolink/network.hpp"
#include "stratolink/rng.hpp"
#include "stratolink/scenario.hpp"
#include "stratolink/scenario_io.hpp"
#include "stratolink/units.hpp"
