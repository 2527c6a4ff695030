#pragma once

#include "orbikit/cyclotomic.hpp"
#include "orbikit/parallel.hpp"
#include "orbikit/fusion_data.hpp"
#include "orbikit/ising.hpp"
#include "orbikit/orbifold.hpp"
#include "orbikit/invariants.hpp"
#include "orbikit/fib_solver.hpp"
#include "orbikit/bimodule_analysis.hpp"
#include "orbikit/io.hpp"
#include "orbikit/random.hpp"
