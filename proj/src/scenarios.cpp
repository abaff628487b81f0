#include "hflop/scenarios.hpp"

#include <stdexcept>

namespace hflop {

HflopInstance make_clustered_instance(int clusters, int per_cluster, double lambda,
                                      const std::vector<Capacity>& capacities,
                                      int local_rounds_per_global) {
  if (clusters < 1 || per_cluster < 1) {
    throw std::invalid_argument("need at least one cluster and one device per cluster");
  }
  std::vector<Capacity> caps = capacities;
  if (caps.size() == 1) {
    caps.assign(static_cast<std::size_t>(clusters), capacities.front());
  }
  if (caps.size() != static_cast<std::size_t>(clusters)) {
    throw std::invalid_argument("one capacity per cluster expected");
  }

  const int n = clusters * per_cluster;
  std::vector<Device> devices(static_cast<std::size_t>(n));
  std::vector<double> cost(static_cast<std::size_t>(n) * clusters, 1.0);
  for (int i = 0; i < n; ++i) {
    devices[i].id = i;
    devices[i].lambda = lambda;
    cost[static_cast<std::size_t>(i) * clusters + i / per_cluster] = 0.0;
  }
  std::vector<EdgeNode> edges(static_cast<std::size_t>(clusters));
  for (int j = 0; j < clusters; ++j) {
    edges[j].id = j;
    edges[j].capacity = caps[j];
    edges[j].cloud_cost = 1.0;
  }
  return HflopInstance(Topology(std::move(devices), std::move(edges), std::move(cost)),
                       local_rounds_per_global, n);
}

HflopInstance clustered_uncap_instance() {
  return make_clustered_instance(4, 5, 20.0, {Capacity::infinite()});
}

HflopInstance latency_overload_instance() {
  return make_clustered_instance(
      4, 5, 20.0,
      {Capacity::of(35.0), Capacity::of(200.0), Capacity::of(200.0),
       Capacity::of(200.0)});
}

HflopInstance speedup_sweep_instance() {
  return make_clustered_instance(4, 5, 20.0, {Capacity::of(160.0)});
}

Solution location_solution(const HflopInstance& instance) {
  const Topology& topo = instance.topology;
  std::vector<std::optional<int>> assignment(topo.device_count());
  for (int i = 0; i < topo.device_count(); ++i) {
    int best = 0;
    for (int j = 1; j < topo.edge_count(); ++j) {
      if (topo.device_edge_cost(i, j) < topo.device_edge_cost(i, best)) {
        best = j;
      }
    }
    assignment[i] = best;
  }
  return Solution::from_assignment(instance, std::move(assignment),
                                   SolverKind::greedy);
}

}  // namespace hflop
