#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hflop/topology.hpp"

namespace hflop {

struct KmeansResult {
  std::vector<int> assignment;     // point index -> cluster id in [0, k)
  std::vector<Point2> centroids;   // size k
  std::vector<double> wcss_trace;  // within-cluster sum of squares per iteration
  int iterations = 0;
};

// Planar Euclidean k-means with seeded k-means++ initialization, a fixed
// cap of 100 iterations and convergence tolerance 1e-9 on centroid
// movement. Ties in the nearest-centroid test go to the lowest cluster id,
// so the result is deterministic for a fixed seed.
KmeansResult cluster_geographic(const std::vector<Point2>& points, int k,
                                std::uint64_t seed);

// Picks `per_cluster` distinct member indices from every cluster, seeded.
// Throws if any cluster has fewer than `per_cluster` members. The returned
// ids are sorted point indices.
std::vector<int> select_participants(const std::vector<int>& clusters,
                                     int per_cluster, std::uint64_t seed);

struct Sensor {
  std::string id;
  Point2 coords;
};

// Reads one sensor per line: `id,lat,lon`. Blank lines are skipped.
std::vector<Sensor> load_sensor_coords(const std::string& path);

struct ClusteredScenarioParams {
  int clusters = 4;
  int per_cluster = 5;
  std::uint64_t seed = 0;
  Interval lambda_range{1.0, 1.0};
  Capacity edge_capacity = Capacity::infinite();
  double cloud_cost = 1.0;
  int local_rounds_per_global = 2;
};

// Builds an instance from geographic sensors: k-means clusters become edge
// hosts (at the centroids), `per_cluster` sensors are drawn from each
// cluster as the participating devices, and each device reaches its own
// cluster's edge at zero cost and every other edge at unit cost. All
// selected devices are required to participate (T = k * per_cluster).
HflopInstance build_clustered_instance(const std::vector<Sensor>& sensors,
                                       const ClusteredScenarioParams& params);

}  // namespace hflop
