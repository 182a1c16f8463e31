#pragma once

// Umbrella header for the asymsim library.

#include "asym/bayes.hpp"
#include "asym/config.hpp"
#include "asym/contract.hpp"
#include "asym/econ.hpp"
#include "asym/io.hpp"
#include "asym/manipulation.hpp"
#include "asym/market.hpp"
#include "asym/metrics.hpp"
#include "asym/rng.hpp"
#include "asym/runner.hpp"
#include "asym/stats.hpp"
