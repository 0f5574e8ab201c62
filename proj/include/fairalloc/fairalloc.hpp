// Umbrella header.
#ifndef FAIRALLOC_FAIRALLOC_HPP
#define FAIRALLOC_FAIRALLOC_HPP

#include "fairalloc/model.hpp"
#include "fairalloc/instance_io.hpp"
#include "fairalloc/flow_network.hpp"
#include "fairalloc/max_flow.hpp"
#include "fairalloc/min_mean_cycle.hpp"
#include "fairalloc/min_cost_flow.hpp"
#include "fairalloc/mlmf.hpp"
#include "fairalloc/mfmca.hpp"
#include "fairalloc/oracle.hpp"
#include "fairalloc/scenario.hpp"
#include "fairalloc/experiments.hpp"

#endif  // FAIRALLOC_FAIRALLOC_HPP
