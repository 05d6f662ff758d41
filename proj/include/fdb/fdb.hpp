#pragma once

// Umbrella header for the fdb higher-order directional differentiation
// library.

#include "fdb/differentials.hpp"
#include "fdb/errors.hpp"
#include "fdb/expr.hpp"
#include "fdb/faadibruno.hpp"
#include "fdb/multidual.hpp"
#include "fdb/partitions.hpp"
