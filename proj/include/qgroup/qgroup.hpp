#pragma once

#include "qgroup/error.hpp"
#include "qgroup/algebra.hpp"
#include "qgroup/groups.hpp"
#include "qgroup/variables.hpp"
#include "qgroup/reps_coherent.hpp"
#include "qgroup/quantize.hpp"
#include "qgroup/spin.hpp"
#include "qgroup/phase_space.hpp"
#include "qgroup/report.hpp"
#include "qgroup/serialize.hpp"
#include "qgroup/scenarios.hpp"
