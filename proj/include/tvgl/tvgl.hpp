#pragma once

// Solver library. The experiment layer (YAML configs, CSV output) lives in
// tvgl/experiment/ and is not pulled in here.

#include "tvgl/admm.hpp"
#include "tvgl/graph_vec.hpp"
#include "tvgl/metrics.hpp"
#include "tvgl/objective.hpp"
#include "tvgl/parallel.hpp"
#include "tvgl/prox.hpp"
#include "tvgl/synthetic.hpp"
#include "tvgl/temporal_graph.hpp"
