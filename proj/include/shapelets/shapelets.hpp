#ifndef SHAPELETS_SHAPELETS_HPP
#define SHAPELETS_SHAPELETS_HPP

#include "bench.hpp"
#include "core.hpp"
#include "discovery.hpp"
#include "distance.hpp"
#include "eval.hpp"
#include "io.hpp"
#include "nn.hpp"
#include "paa.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "testkit.hpp"

#endif
