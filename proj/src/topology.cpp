#include "hflop/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "hflop/rng.hpp"

namespace hflop {

Capacity Capacity::of(double requests_per_second) {
  if (!(requests_per_second >= 0.0) || !std::isfinite(requests_per_second)) {
    throw std::invalid_argument("capacity must be finite and >= 0");
  }
  Capacity c;
  c.value_ = requests_per_second;
  c.infinite_ = false;
  return c;
}

Capacity Capacity::infinite() {
  Capacity c;
  c.infinite_ = true;
  return c;
}

double Capacity::value() const {
  if (infinite_) {
    throw std::logic_error("value() called on infinite capacity");
  }
  return value_;
}

Topology::Topology(std::vector<Device> devices, std::vector<EdgeNode> edges,
                   std::vector<double> device_edge_cost)
    : devices_(std::move(devices)),
      edges_(std::move(edges)),
      device_edge_cost_(std::move(device_edge_cost)) {
  const std::size_t n = devices_.size();
  const std::size_t m = edges_.size();
  if (device_edge_cost_.size() != n * m) {
    throw std::invalid_argument(
        "device_edge_cost has " + std::to_string(device_edge_cost_.size()) +
        " entries, expected " + std::to_string(n) + " x " + std::to_string(m));
  }

  std::unordered_set<int> seen;
  for (const Device& d : devices_) {
    if (!std::isfinite(d.lambda) || d.lambda < 0.0) {
      throw std::invalid_argument("device " + std::to_string(d.id) +
                                  ": lambda must be finite and >= 0");
    }
    if (!seen.insert(d.id).second) {
      throw std::invalid_argument("duplicate device id " + std::to_string(d.id));
    }
  }
  seen.clear();
  for (const EdgeNode& e : edges_) {
    if (!std::isfinite(e.cloud_cost) || e.cloud_cost < 0.0) {
      throw std::invalid_argument("edge " + std::to_string(e.id) +
                                  ": cloud_cost must be finite and >= 0");
    }
    if (!seen.insert(e.id).second) {
      throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
    }
  }
  for (double c : device_edge_cost_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw std::invalid_argument("device-edge costs must be finite and >= 0");
    }
  }
}

HflopInstance::HflopInstance(Topology topo, int l, int t) : topology(std::move(topo)) {
  if (l < 1) {
    throw std::invalid_argument("local rounds per global round must be >= 1");
  }
  if (t < 0 || t > topology.device_count()) {
    throw std::invalid_argument("min_participation must be in [0, n]");
  }
  local_rounds_per_global = l;
  min_participation = t;
}

namespace {

void check_interval(const Interval& r, const char* what) {
  if (!(r.lo >= 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
    throw std::invalid_argument(std::string(what) +
                                " range must satisfy 0 <= lo <= hi < inf");
  }
}

}  // namespace

HflopInstance generate_uniform(int n, int m, std::uint64_t seed,
                               Interval lambda_range, Interval capacity_range,
                               int local_rounds_per_global,
                               std::optional<int> min_participation) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("need at least one device and one edge");
  }
  check_interval(lambda_range, "lambda");
  check_interval(capacity_range, "capacity");

  Rng rng(seed);
  std::vector<Device> devices(static_cast<std::size_t>(n));
  std::vector<EdgeNode> edges(static_cast<std::size_t>(m));
  std::vector<double> cost(static_cast<std::size_t>(n) * m, 1.0);

  for (int i = 0; i < n; ++i) {
    devices[i].id = i;
    devices[i].lambda = rng.uniform(lambda_range.lo, lambda_range.hi);
    const int home = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(m)));
    cost[static_cast<std::size_t>(i) * m + home] = 0.0;
  }
  for (int j = 0; j < m; ++j) {
    edges[j].id = j;
    edges[j].capacity = Capacity::of(rng.uniform(capacity_range.lo, capacity_range.hi));
    edges[j].cloud_cost = 1.0;
  }

  const int t = min_participation.value_or(n);
  return HflopInstance(Topology(std::move(devices), std::move(edges), std::move(cost)),
                       local_rounds_per_global, t);
}

}  // namespace hflop
