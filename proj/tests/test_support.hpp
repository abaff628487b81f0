#pragma once

// Shared helpers for the test suites: seeded random instance generators
// sized for exhaustive oracles, and an independent CFLP enumerator that
// deliberately shares no code with the solver under test.

#include <algorithm>
#include <optional>
#include <vector>

#include "hflop/fixed_point.hpp"
#include "hflop/rng.hpp"
#include "hflop/solver.hpp"
#include "hflop/topology.hpp"

namespace hflop::testing {

struct RandomInstanceOptions {
  int max_devices = 8;
  int max_edges = 3;
  bool allow_infinite_capacity = true;
  bool unit_cost_family = false;  // zero-cost home edge + unit costs elsewhere
};

// Mixed feasible/infeasible small instances: arbitrary decimal costs,
// uniform workloads, capacities tight enough that some draws cannot meet
// the participation minimum.
inline HflopInstance random_instance(Rng& rng, const RandomInstanceOptions& opts = {}) {
  const int n = 1 + static_cast<int>(rng.uniform_index(opts.max_devices));
  const int m = 1 + static_cast<int>(rng.uniform_index(opts.max_edges));

  std::vector<Device> devices(n);
  for (int i = 0; i < n; ++i) {
    devices[i].id = i;
    devices[i].lambda = rng.uniform(0.0, 4.0);
  }

  std::vector<EdgeNode> edges(m);
  for (int j = 0; j < m; ++j) {
    edges[j].id = j;
    if (opts.allow_infinite_capacity && rng.bernoulli(0.15)) {
      edges[j].capacity = Capacity::infinite();
    } else {
      edges[j].capacity = Capacity::of(rng.uniform(0.0, 10.0));
    }
    edges[j].cloud_cost = opts.unit_cost_family ? 1.0 : rng.uniform(0.0, 5.0);
  }

  std::vector<double> cost(static_cast<std::size_t>(n) * m, 1.0);
  if (opts.unit_cost_family) {
    for (int i = 0; i < n; ++i) {
      cost[static_cast<std::size_t>(i) * m + rng.uniform_index(m)] = 0.0;
    }
  } else {
    for (auto& c : cost) {
      c = rng.uniform(0.0, 3.0);
    }
  }

  const int l = 1 + static_cast<int>(rng.uniform_index(3));
  const int t = static_cast<int>(rng.uniform_index(n + 1));
  return HflopInstance(Topology(std::move(devices), std::move(edges), std::move(cost)),
                       l, t);
}

inline CflpInstance random_cflp(Rng& rng, int max_clients = 8, int max_facilities = 3) {
  CflpInstance cflp;
  const int n = 1 + static_cast<int>(rng.uniform_index(max_clients));
  const int m = 1 + static_cast<int>(rng.uniform_index(max_facilities));
  cflp.facilities.resize(m);
  for (auto& f : cflp.facilities) {
    f.setup_cost = rng.uniform(0.0, 8.0);
    f.capacity = rng.uniform(0.0, 12.0);
  }
  cflp.demands.resize(n);
  for (auto& d : cflp.demands) {
    d = rng.uniform(0.0, 5.0);
  }
  cflp.transport.resize(static_cast<std::size_t>(n) * m);
  for (auto& t : cflp.transport) {
    t = rng.uniform(0.0, 6.0);
  }
  return cflp;
}

// Exhaustive CFLP oracle: every client must be served by exactly one
// facility with enough remaining capacity. Fixed-point arithmetic matches
// the solver's cost resolution; the enumeration itself is independent.
inline std::optional<Micros> cflp_brute_force(const CflpInstance& cflp) {
  const int n = cflp.client_count();
  const int m = cflp.facility_count();

  std::vector<Micros> demand(n);
  for (int i = 0; i < n; ++i) {
    demand[i] = to_micros(cflp.demands[i]);
  }
  std::vector<Micros> capacity(m), setup(m);
  for (int j = 0; j < m; ++j) {
    capacity[j] = to_micros(cflp.facilities[j].capacity);
    setup[j] = to_micros(cflp.facilities[j].setup_cost);
  }

  std::vector<int> choice(n, 0);
  std::optional<Micros> best;
  while (true) {
    std::vector<Micros> load(m, 0);
    Micros transport = 0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      load[choice[i]] += demand[i];
      transport += to_micros(cflp.transport_cost(i, choice[i]));
      ok = load[choice[i]] <= capacity[choice[i]];
    }
    if (ok) {
      Micros total = transport;
      std::vector<bool> used(m, false);
      for (int i = 0; i < n; ++i) {
        used[choice[i]] = true;
      }
      for (int j = 0; j < m; ++j) {
        if (used[j]) {
          total += setup[j];
        }
      }
      if (!best || total < *best) {
        best = total;
      }
    }
    int pos = n - 1;
    while (pos >= 0 && choice[pos] == m - 1) {
      choice[pos--] = 0;
    }
    if (pos < 0) {
      break;
    }
    ++choice[pos];
  }
  return best;
}

inline bool solutions_identical(const Solution& a, const Solution& b) {
  return a.assignment == b.assignment && a.placements == b.placements &&
         a.objective == b.objective && a.kind == b.kind;
}

}  // namespace hflop::testing
