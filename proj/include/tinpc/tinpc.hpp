#pragma once

#include "tinpc/rational.hpp"
#include "tinpc/tuples.hpp"
#include "tinpc/channel.hpp"
#include "tinpc/potential_graph.hpp"
#include "tinpc/lexicographic_simplex.hpp"
#include "tinpc/tin_region.hpp"
#include "tinpc/power_control.hpp"
#include "tinpc/finite_snr.hpp"
#include "tinpc/io.hpp"
