#include "hflop/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hflop/rng.hpp"

namespace hflop {

namespace {

double sq_dist(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

int nearest_centroid(const Point2& p, const std::vector<Point2>& centroids) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int c = 0; c < static_cast<int>(centroids.size()); ++c) {
    const double d = sq_dist(p, centroids[c]);
    if (d < best_d) {  // strict: ties keep the lowest cluster id
      best_d = d;
      best = c;
    }
  }
  return best;
}

// k-means++ seeding: first centroid uniform, then proportional to squared
// distance from the nearest chosen centroid.
std::vector<Point2> seed_centroids(const std::vector<Point2>& points, int k, Rng& rng) {
  std::vector<Point2> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng.uniform_index(points.size())]);

  std::vector<double> d2(points.size());
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      d2[i] = sq_dist(points[i], centroids[nearest_centroid(points[i], centroids)]);
      total += d2[i];
    }
    if (total == 0.0) {
      // all remaining points coincide with a centroid; any choice is valid
      centroids.push_back(points[rng.uniform_index(points.size())]);
      continue;
    }
    double target = rng.next_double() * total;
    std::size_t pick = points.size() - 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      target -= d2[i];
      if (target <= 0.0) {
        pick = i;
        break;
      }
    }
    centroids.push_back(points[pick]);
  }
  return centroids;
}

}  // namespace

KmeansResult cluster_geographic(const std::vector<Point2>& points, int k,
                                std::uint64_t seed) {
  if (points.empty()) {
    throw std::invalid_argument("cannot cluster an empty point list");
  }
  if (k < 1 || k > static_cast<int>(points.size())) {
    throw std::invalid_argument("cluster count must be in [1, number of points]");
  }
  for (const Point2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("points must be finite");
    }
  }

  constexpr int kMaxIterations = 100;
  constexpr double kMoveTolerance = 1e-9;

  Rng rng(seed);
  KmeansResult result;
  result.centroids = seed_centroids(points, k, rng);
  result.assignment.assign(points.size(), 0);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double wcss = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      result.assignment[i] = nearest_centroid(points[i], result.centroids);
      wcss += sq_dist(points[i], result.centroids[result.assignment[i]]);
    }
    result.wcss_trace.push_back(wcss);
    result.iterations = iter + 1;

    std::vector<Point2> sums(static_cast<std::size_t>(k), Point2{});
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      sums[result.assignment[i]].x += points[i].x;
      sums[result.assignment[i]].y += points[i].y;
      ++counts[result.assignment[i]];
    }
    double max_move = 0.0;
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        continue;  // empty cluster keeps its centroid
      }
      const Point2 updated{sums[c].x / counts[c], sums[c].y / counts[c]};
      max_move = std::max(max_move, std::sqrt(sq_dist(updated, result.centroids[c])));
      result.centroids[c] = updated;
    }
    if (max_move < kMoveTolerance) {
      break;
    }
  }
  return result;
}

std::vector<int> select_participants(const std::vector<int>& clusters,
                                     int per_cluster, std::uint64_t seed) {
  if (per_cluster < 0) {
    throw std::invalid_argument("per_cluster must be >= 0");
  }
  if (per_cluster == 0) {
    return {};
  }
  int k = 0;
  for (int c : clusters) {
    if (c < 0) {
      throw std::invalid_argument("cluster ids must be >= 0");
    }
    k = std::max(k, c + 1);
  }

  std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    members[clusters[i]].push_back(static_cast<int>(i));
  }

  Rng rng(seed);
  std::vector<int> selected;
  selected.reserve(static_cast<std::size_t>(k) * per_cluster);
  for (int c = 0; c < k; ++c) {
    auto& pool = members[c];
    if (static_cast<int>(pool.size()) < per_cluster) {
      throw std::invalid_argument("cluster " + std::to_string(c) + " has " +
                                  std::to_string(pool.size()) + " members, need " +
                                  std::to_string(per_cluster));
    }
    // partial Fisher-Yates over the (already index-sorted) member list
    for (int t = 0; t < per_cluster; ++t) {
      const std::size_t pick = t + rng.uniform_index(pool.size() - t);
      std::swap(pool[t], pool[pick]);
      selected.push_back(pool[t]);
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

std::vector<Sensor> load_sensor_coords(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open sensor file: " + path);
  }
  std::vector<Sensor> sensors;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::stringstream ss(line);
    std::string id, lat, lon;
    if (!std::getline(ss, id, ',') || !std::getline(ss, lat, ',') ||
        !std::getline(ss, lon)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected `id,lat,lon`");
    }
    try {
      sensors.push_back(Sensor{id, Point2{std::stod(lat), std::stod(lon)}});
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": malformed coordinate");
    }
  }
  return sensors;
}

HflopInstance build_clustered_instance(const std::vector<Sensor>& sensors,
                                       const ClusteredScenarioParams& params) {
  std::vector<Point2> points;
  points.reserve(sensors.size());
  for (const Sensor& s : sensors) {
    points.push_back(s.coords);
  }

  const KmeansResult km = cluster_geographic(points, params.clusters, params.seed);
  const std::vector<int> picked =
      select_participants(km.assignment, params.per_cluster, params.seed);

  Rng rng(params.seed);
  std::vector<Device> devices;
  devices.reserve(picked.size());
  const int m = params.clusters;
  std::vector<double> cost(picked.size() * static_cast<std::size_t>(m), 1.0);
  for (std::size_t i = 0; i < picked.size(); ++i) {
    Device d;
    d.id = static_cast<int>(i);
    d.lambda = rng.uniform(params.lambda_range.lo, params.lambda_range.hi);
    d.coords = points[picked[i]];
    devices.push_back(d);
    cost[i * m + km.assignment[picked[i]]] = 0.0;  // own cluster's edge is free
  }

  std::vector<EdgeNode> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    EdgeNode e;
    e.id = j;
    e.capacity = params.edge_capacity;
    e.cloud_cost = params.cloud_cost;
    e.coords = km.centroids[j];
    edges.push_back(e);
  }

  const int t = static_cast<int>(devices.size());
  return HflopInstance(Topology(std::move(devices), std::move(edges), std::move(cost)),
                       params.local_rounds_per_global, t);
}

}  // namespace hflop
