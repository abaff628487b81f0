#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace hflop {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// A client device participating in training while generating inference
// requests at `lambda` requests/second.
struct Device {
  int id = 0;
  double lambda = 0.0;
  std::optional<Point2> coords;
};

// Inference processing capacity of an edge host, in requests/second.
// Infinite capacity is a distinguished value, not a large number, so the
// uncapacitated solver path is exact.
class Capacity {
 public:
  Capacity() = default;

  static Capacity of(double requests_per_second);
  static Capacity infinite();

  bool is_infinite() const { return infinite_; }

  // Finite value; calling this on an infinite capacity is a logic error.
  double value() const;

  // Admission test usable for both finite and infinite capacities.
  bool admits(double load) const { return infinite_ || load <= value_; }

  bool operator==(const Capacity& other) const {
    return infinite_ == other.infinite_ && (infinite_ || value_ == other.value_);
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

// An edge host eligible to run a local aggregator. `cloud_cost` is the
// communication cost of one model transfer between this host and the
// global server.
struct EdgeNode {
  int id = 0;
  Capacity capacity;
  double cloud_cost = 0.0;
  std::optional<Point2> coords;
};

// The system model: n devices, m candidate edge hosts, and the n x m
// device-edge transfer cost matrix (row-major).
class Topology {
 public:
  Topology(std::vector<Device> devices, std::vector<EdgeNode> edges,
           std::vector<double> device_edge_cost);

  int device_count() const { return static_cast<int>(devices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<Device>& devices() const { return devices_; }
  const std::vector<EdgeNode>& edges() const { return edges_; }
  const std::vector<double>& cost_matrix() const { return device_edge_cost_; }

  // Transfer cost for device position i and edge position j.
  double device_edge_cost(int i, int j) const {
    return device_edge_cost_[static_cast<std::size_t>(i) * edges_.size() + j];
  }

 private:
  std::vector<Device> devices_;
  std::vector<EdgeNode> edges_;
  std::vector<double> device_edge_cost_;  // n rows x m columns
};

// One optimization problem: a topology plus the round structure. `l` local
// aggregation rounds happen per global round; at least `min_participation`
// devices must be assigned to an aggregator.
struct HflopInstance {
  Topology topology;
  int local_rounds_per_global = 1;  // l >= 1
  int min_participation = 0;        // 0 <= T <= n

  HflopInstance(Topology topo, int l, int t);

  int device_count() const { return topology.device_count(); }
  int edge_count() const { return topology.edge_count(); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Random instance family used by the cost benchmarks: every device has
// exactly one zero-cost edge picked uniformly at random, every other
// device-edge link costs one unit, and all edge-cloud links cost one unit.
// Workloads and capacities are drawn uniformly from the given intervals.
// Deterministic for a fixed seed.
HflopInstance generate_uniform(int n, int m, std::uint64_t seed,
                               Interval lambda_range, Interval capacity_range,
                               int local_rounds_per_global = 2,
                               std::optional<int> min_participation = std::nullopt);

}  // namespace hflop
