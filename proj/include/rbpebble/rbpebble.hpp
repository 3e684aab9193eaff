#pragma once

#include "rbpebble/dag.hpp"
#include "rbpebble/dag_io.hpp"
#include "rbpebble/engine.hpp"
#include "rbpebble/generators.hpp"
#include "rbpebble/greedy.hpp"
#include "rbpebble/schedule.hpp"
#include "rbpebble/solver.hpp"
#include "rbpebble/trace_io.hpp"
