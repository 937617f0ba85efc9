#pragma once

#include "wenott/harness/report.hpp"
#include "wenott/harness/run.hpp"
#include "wenott/harness/study.hpp"
#include "wenott/harness/reference.hpp"
