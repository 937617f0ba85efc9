#pragma once

#include "wenott/tt/io.hpp"
#include "wenott/tt/max_abs.hpp"
#include "wenott/tt/ops.hpp"
#include "wenott/tt/tensor_train.hpp"
