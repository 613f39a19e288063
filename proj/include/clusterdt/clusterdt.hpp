#pragma once

// Umbrella header for the library (the cli/ headers are included separately).

#include "clusterdt/arith.hpp"
#include "clusterdt/coxeter.hpp"
#include "clusterdt/exchange_graph.hpp"
#include "clusterdt/matrix.hpp"
#include "clusterdt/polynomial.hpp"
#include "clusterdt/quiver.hpp"
#include "clusterdt/stability.hpp"
#include "clusterdt/trichotomy.hpp"
#include "clusterdt/tropical.hpp"
