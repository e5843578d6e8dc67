#pragma once

#include "nlrank/arith.hpp"
#include "nlrank/cusp_dim.hpp"
#include "nlrank/discriminant.hpp"
#include "nlrank/error.hpp"
#include "nlrank/lattice.hpp"
#include "nlrank/matrix.hpp"
#include "nlrank/nl_cycles.hpp"
#include "nlrank/numeric.hpp"
#include "nlrank/rank_formula.hpp"
#include "nlrank/smith.hpp"
#include "nlrank/weil.hpp"
