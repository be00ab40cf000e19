#pragma once

// Umbrella header.

#include "polyround/audit.hpp"
#include "polyround/errors.hpp"
#include "polyround/flux.hpp"
#include "polyround/generators.hpp"
#include "polyround/io.hpp"
#include "polyround/lp.hpp"
#include "polyround/polytope.hpp"
#include "polyround/roundness.hpp"
#include "polyround/svd.hpp"
#include "polyround/types.hpp"
