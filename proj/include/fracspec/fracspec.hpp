#pragma once

// Umbrella header for the whole library.

#include "csv.hpp"
#include "grid.hpp"
#include "jacobi.hpp"
#include "kernels.hpp"
#include "model_problem.hpp"
#include "operator_spec.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "solvers.hpp"
#include "special_functions.hpp"
