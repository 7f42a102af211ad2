#pragma once
// Umbrella header.

#include "acnav/ca_rules.hpp"
#include "acnav/control_fsm.hpp"
#include "acnav/fleet.hpp"
#include "acnav/lattice.hpp"
#include "acnav/navigation.hpp"
#include "acnav/odometry.hpp"
#include "acnav/sim/map_file.hpp"
#include "acnav/sim/render.hpp"
#include "acnav/sim/run.hpp"
#include "acnav/sim/scenario.hpp"
#include "acnav/sim/trace_io.hpp"
