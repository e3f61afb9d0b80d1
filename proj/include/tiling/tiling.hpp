#pragma once

#include "tiling/compare.hpp"
#include "tiling/core.hpp"
#include "tiling/enumerate.hpp"
#include "tiling/feasibility.hpp"
#include "tiling/io.hpp"
#include "tiling/symmetry.hpp"
#include "tiling/trace.hpp"
#include "tiling/version.hpp"
