#pragma once

// Gadgets, reduction instances and their decoders.
#include "rbpebble/greedy_grid.hpp"
#include "rbpebble/group_order.hpp"
#include "rbpebble/hampath.hpp"
#include "rbpebble/instance_io.hpp"
#include "rbpebble/tradeoff.hpp"
#include "rbpebble/transforms.hpp"
#include "rbpebble/vertex_cover.hpp"
