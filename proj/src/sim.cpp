#include "hflop/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

#include "hflop/rng.hpp"

namespace hflop {

const char* to_string(Tier tier) {
  switch (tier) {
    case Tier::device: return "device";
    case Tier::edge: return "edge";
    case Tier::cloud: return "cloud";
  }
  return "unknown";
}

const char* to_string(RoutingStep step) {
  switch (step) {
    case RoutingStep::busy_offload: return "busy_offload";
    case RoutingStep::idle_local: return "idle_local";
    case RoutingStep::idle_offload: return "idle_offload";
    case RoutingStep::edge_admit: return "edge_admit";
    case RoutingStep::edge_overflow: return "edge_overflow";
    case RoutingStep::cloud_serve: return "cloud_serve";
  }
  return "unknown";
}

Scheme Scheme::hierarchical(Solution solution) {
  Scheme s;
  s.solution_ = std::move(solution);
  return s;
}

namespace {

void validate_interval(const Interval& r, const char* what) {
  if (!(r.lo >= 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
    throw std::invalid_argument(std::string(what) +
                                " must satisfy 0 <= lo <= hi < inf");
  }
}

void validate_config(const SimConfig& c) {
  if (!(c.duration_s > 0.0) || !std::isfinite(c.duration_s)) {
    throw std::invalid_argument("duration must be > 0");
  }
  if (!(c.lambda_scale >= 0.0) || !std::isfinite(c.lambda_scale)) {
    throw std::invalid_argument("lambda_scale must be >= 0");
  }
  validate_interval(c.edge_latency_ms, "edge latency interval");
  validate_interval(c.cloud_latency_ms, "cloud latency interval");
  if (!(c.edge_service_ms > 0.0) || !(c.device_service_ms > 0.0)) {
    throw std::invalid_argument("service times must be > 0");
  }
  if (!(c.cloud_speedup >= 0.0) || c.cloud_speedup >= 1.0) {
    throw std::invalid_argument("cloud_speedup must be in [0, 1)");
  }
  if (!(c.busy_fraction >= 0.0) || c.busy_fraction > 1.0 ||
      !(c.r2_local_probability >= 0.0) || c.r2_local_probability > 1.0) {
    throw std::invalid_argument("probabilities must be in [0, 1]");
  }
}

// Sliding 1-second admission window per edge, split by request class so
// that busy-device traffic is admitted independently of idle traffic while
// idle traffic sees the total load (R3 priority).
struct EdgeWindow {
  std::deque<double> busy;
  std::deque<double> idle;

  void expire(double now) {
    while (!busy.empty() && busy.front() <= now - 1.0) {
      busy.pop_front();
    }
    while (!idle.empty() && idle.front() <= now - 1.0) {
      idle.pop_front();
    }
  }

  bool admit_busy(double now, const Capacity& cap) {
    expire(now);
    if (cap.is_infinite() || static_cast<double>(busy.size()) < cap.value()) {
      busy.push_back(now);
      return true;
    }
    return false;
  }

  bool admit_idle(double now, const Capacity& cap) {
    expire(now);
    const double total = static_cast<double>(busy.size() + idle.size());
    if (cap.is_infinite() || total < cap.value()) {
      idle.push_back(now);
      return true;
    }
    return false;
  }
};

struct Arrival {
  double time;
  int device;

  bool operator>(const Arrival& other) const {
    return time != other.time ? time > other.time : device > other.device;
  }
};

}  // namespace

SimReport simulate(const HflopInstance& instance, const Scheme& scheme,
                   const SimConfig& config) {
  validate_config(config);
  const Topology& topo = instance.topology;
  const int n = topo.device_count();
  const int m = topo.edge_count();

  if (!scheme.is_flat()) {
    const Solution& sol = scheme.solution();
    if (static_cast<int>(sol.assignment.size()) != n ||
        static_cast<int>(sol.placements.size()) != m) {
      throw std::invalid_argument("solution dimensions do not match instance");
    }
    for (const auto& a : sol.assignment) {
      if (a && (*a < 0 || *a >= m)) {
        throw std::invalid_argument("assignment references edge out of range");
      }
    }
  }

  // Fallback aggregator for devices without an assignment: the cheapest
  // placed edge (they are outside the FL round but may still offload).
  std::vector<int> fallback_edge(n, -1);
  if (!scheme.is_flat()) {
    const Solution& sol = scheme.solution();
    for (int i = 0; i < n; ++i) {
      if (sol.assignment[i]) {
        fallback_edge[i] = *sol.assignment[i];
        continue;
      }
      double best_cost = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j) {
        if (sol.placements[j] && topo.device_edge_cost(i, j) < best_cost) {
          best_cost = topo.device_edge_cost(i, j);
          fallback_edge[i] = j;
        }
      }
    }
  }

  // Arrival streams are independent per device, so the set of issued
  // requests depends only on (seed, duration, lambda_scale).
  std::priority_queue<Arrival, std::vector<Arrival>, std::greater<Arrival>> queue;
  std::vector<Rng> arrivals;
  std::vector<Rng> decisions;
  arrivals.reserve(n);
  decisions.reserve(n);
  for (int i = 0; i < n; ++i) {
    arrivals.push_back(Rng::derive(config.seed, static_cast<std::uint64_t>(i)));
    decisions.push_back(
        Rng::derive(config.seed, static_cast<std::uint64_t>(n) + i));
    const double rate = topo.devices()[i].lambda * config.lambda_scale;
    if (rate > 0.0) {
      const double first = arrivals[i].exponential(rate);
      if (first <= config.duration_s) {
        queue.push(Arrival{first, i});
      }
    }
  }

  std::vector<EdgeWindow> windows(m);
  const double cloud_service_ms = config.edge_service_ms * (1.0 - config.cloud_speedup);

  SimReport report;
  std::vector<double> responses;

  while (!queue.empty()) {
    const Arrival arrival = queue.top();
    queue.pop();
    const int i = arrival.device;
    const double now = arrival.time;

    {
      const double rate = topo.devices()[i].lambda * config.lambda_scale;
      const double next = now + arrivals[i].exponential(rate);
      if (next <= config.duration_s) {
        queue.push(Arrival{next, i});
      }
    }

    RequestOutcome outcome;
    outcome.device = topo.devices()[i].id;
    outcome.issued_at_s = now;

    const bool busy = decisions[i].bernoulli(config.busy_fraction);
    const bool serve_local =
        !busy && decisions[i].bernoulli(config.r2_local_probability);

    if (!busy && serve_local) {
      outcome.served_at = Tier::device;
      outcome.response_ms = config.device_service_ms;
      outcome.hops = {RoutingStep::idle_local};
      ++report.served.device;
    } else {
      // offload target: associated aggregator, or the cloud for flat FL
      if (busy) {
        ++report.offloads.r1_offloads;
      } else {
        ++report.offloads.r2_offloads;
      }
      const int target = scheme.is_flat() ? -1 : fallback_edge[i];
      if (target < 0) {
        const double cloud_rtt =
            decisions[i].uniform(config.cloud_latency_ms.lo, config.cloud_latency_ms.hi);
        outcome.served_at = Tier::cloud;
        outcome.response_ms = cloud_rtt + cloud_service_ms;
        outcome.hops = {busy ? RoutingStep::busy_offload : RoutingStep::idle_offload,
                        RoutingStep::cloud_serve};
        ++report.served.cloud;
      } else {
        const double edge_rtt =
            decisions[i].uniform(config.edge_latency_ms.lo, config.edge_latency_ms.hi);
        const Capacity& cap = topo.edges()[target].capacity;
        const bool admitted = busy ? windows[target].admit_busy(now, cap)
                                   : windows[target].admit_idle(now, cap);
        outcome.edge = topo.edges()[target].id;
        if (admitted) {
          outcome.served_at = Tier::edge;
          outcome.response_ms = edge_rtt + config.edge_service_ms;
          outcome.hops = {busy ? RoutingStep::busy_offload : RoutingStep::idle_offload,
                          RoutingStep::edge_admit};
          ++report.served.edge;
        } else {
          const double cloud_rtt = decisions[i].uniform(config.cloud_latency_ms.lo,
                                                        config.cloud_latency_ms.hi);
          outcome.served_at = Tier::cloud;
          outcome.response_ms = edge_rtt + cloud_rtt + cloud_service_ms;
          outcome.hops = {busy ? RoutingStep::busy_offload : RoutingStep::idle_offload,
                          RoutingStep::edge_overflow, RoutingStep::cloud_serve};
          ++report.served.cloud;
          ++report.offloads.r3_overflows;
        }
      }
    }

    ++report.total_requests;
    responses.push_back(outcome.response_ms);
    if (config.keep_outcomes) {
      report.outcomes.push_back(std::move(outcome));
    }
  }

  if (!responses.empty()) {
    double sum = 0.0;
    for (double r : responses) {
      sum += r;
    }
    report.mean_ms = sum / static_cast<double>(responses.size());
    double sq = 0.0;
    for (double r : responses) {
      sq += (r - report.mean_ms) * (r - report.mean_ms);
    }
    report.stddev_ms = responses.size() > 1
                           ? std::sqrt(sq / static_cast<double>(responses.size() - 1))
                           : 0.0;
    std::sort(responses.begin(), responses.end());
    auto nearest_rank = [&](double p) {
      const std::size_t rank = static_cast<std::size_t>(
          std::ceil(p * static_cast<double>(responses.size())));
      return responses[std::max<std::size_t>(rank, 1) - 1];
    };
    report.p50_ms = nearest_rank(0.50);
    report.p95_ms = nearest_rank(0.95);
    report.p99_ms = nearest_rank(0.99);
  }
  return report;
}

std::vector<SweepRow> sweep_speedup(
    const HflopInstance& instance,
    const std::vector<std::pair<std::string, Scheme>>& schemes,
    const SimConfig& config, const std::vector<double>& speedups) {
  std::vector<SweepRow> rows;
  rows.reserve(schemes.size() * speedups.size());
  for (const auto& [name, scheme] : schemes) {
    for (double s : speedups) {
      SimConfig point = config;
      point.cloud_speedup = s;
      point.keep_outcomes = false;
      const SimReport report = simulate(instance, scheme, point);
      rows.push_back(SweepRow{name, s, report.mean_ms});
    }
  }
  return rows;
}

std::optional<double> crossover_speedup(const std::vector<SweepRow>& rows,
                                        const std::string& flat_name) {
  std::vector<double> speedups;
  for (const auto& row : rows) {
    if (std::find(speedups.begin(), speedups.end(), row.speedup) == speedups.end()) {
      speedups.push_back(row.speedup);
    }
  }
  std::sort(speedups.begin(), speedups.end());
  for (double s : speedups) {
    double flat_mean = std::numeric_limits<double>::infinity();
    double best_other = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
      if (row.speedup != s) {
        continue;
      }
      if (row.scheme == flat_name) {
        flat_mean = row.mean_ms;
      } else {
        best_other = std::min(best_other, row.mean_ms);
      }
    }
    if (flat_mean < best_other) {
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace hflop
