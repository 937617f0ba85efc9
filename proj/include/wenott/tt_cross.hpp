#pragma once

#include "wenott/tt/cross.hpp"
#include "wenott/tt/maxvol.hpp"
