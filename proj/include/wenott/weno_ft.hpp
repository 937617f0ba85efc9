#pragma once

#include "wenott/boundary.hpp"
#include "wenott/ft/boundary.hpp"
#include "wenott/ft/euler.hpp"
#include "wenott/ft/field.hpp"
#include "wenott/ft/laws.hpp"
#include "wenott/ft/solver.hpp"
#include "wenott/ft/weno.hpp"
