#pragma once

#include "entrosteer/error.hpp"
#include "entrosteer/core.hpp"
#include "entrosteer/entropy.hpp"
#include "entrosteer/measurements.hpp"
#include "entrosteer/states.hpp"
#include "entrosteer/optimize.hpp"
#include "entrosteer/bounds.hpp"
#include "entrosteer/criteria.hpp"
#include "entrosteer/solvers.hpp"
