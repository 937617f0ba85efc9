#pragma once

#include "wenott/problems/catalog.hpp"
#include "wenott/problems/riemann.hpp"
#include "wenott/problems/shocks.hpp"
#include "wenott/problems/smooth.hpp"
#include "wenott/problems/spec.hpp"
