#pragma once

#include "iep/decomposition.hpp"
#include "iep/ep_engine.hpp"
#include "iep/error.hpp"
#include "iep/generators.hpp"
#include "iep/graph_io.hpp"
#include "iep/immersion.hpp"
#include "iep/json_io.hpp"
#include "iep/multigraph.hpp"
#include "iep/suite.hpp"
