#pragma once

#include "wenott/ttweno/boundary.hpp"
#include "wenott/ttweno/solver.hpp"
#include "wenott/ttweno/state.hpp"
