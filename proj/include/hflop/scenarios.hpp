#pragma once

#include <vector>

#include "hflop/solver.hpp"
#include "hflop/topology.hpp"

namespace hflop {

// Clustered serving scenario: `clusters` edge hosts, `per_cluster` devices
// per cluster, every device reaching its own cluster's edge at zero cost
// and the rest at unit cost, unit edge-cloud costs, all devices required to
// participate. Capacities are given per edge (one entry replicated when a
// single value is passed).
HflopInstance make_clustered_instance(int clusters, int per_cluster,
                                      double lambda,
                                      const std::vector<Capacity>& capacities,
                                      int local_rounds_per_global = 2);

// The use-case serving topology: 4 edges, 5 devices each, 20 req/s per
// device, unlimited edge capacity.
HflopInstance clustered_uncap_instance();

// Same topology with one undersized edge (35 req/s against a 100 req/s
// cluster) and roomy remaining edges, so proximity-only assignment
// overloads edge 0 while a capacity-aware assignment does not.
HflopInstance latency_overload_instance();

// Same topology with every capacity at 1.6x the per-cluster load: no
// overflow at the base request rates, heavy overflow at 10x.
HflopInstance speedup_sweep_instance();

// Proximity-only assignment: every device on its cheapest edge, capacities
// ignored. This is the location-clustered baseline scheme.
Solution location_solution(const HflopInstance& instance);

}  // namespace hflop
