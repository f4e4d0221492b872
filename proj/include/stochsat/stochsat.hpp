#pragma once

// Umbrella header for the core library (no third-party headers beyond Boost.Math).

#include "stochsat/aloe.hpp"
#include "stochsat/benchmarks.hpp"
#include "stochsat/certify.hpp"
#include "stochsat/distributions.hpp"
#include "stochsat/errors.hpp"
#include "stochsat/formula.hpp"
#include "stochsat/interval.hpp"
#include "stochsat/oracles.hpp"
#include "stochsat/parser.hpp"
#include "stochsat/polynomial.hpp"
#include "stochsat/problem.hpp"
#include "stochsat/rng.hpp"
#include "stochsat/solver.hpp"
