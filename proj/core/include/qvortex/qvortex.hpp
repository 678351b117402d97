#pragma once

#include "qvortex/dynamics.hpp"
#include "qvortex/errors.hpp"
#include "qvortex/flow.hpp"
#include "qvortex/images.hpp"
#include "qvortex/qcalc.hpp"
#include "qvortex/theta.hpp"
