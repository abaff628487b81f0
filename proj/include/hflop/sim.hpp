#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hflop/solver.hpp"
#include "hflop/topology.hpp"

namespace hflop {

// Inference request simulation parameters. Latencies are round-trip
// milliseconds sampled uniformly from the configured interval per hop.
struct SimConfig {
  std::uint64_t seed = 0;
  double duration_s = 60.0;      // simulated seconds of request generation
  double lambda_scale = 1.0;     // multiplier applied to every device rate
  Interval edge_latency_ms{8.0, 10.0};
  Interval cloud_latency_ms{50.0, 100.0};
  double edge_service_ms = 4.0;
  double device_service_ms = 4.0;
  double cloud_speedup = 0.0;    // in [0,1); cloud service = edge_service * (1 - s)
  double busy_fraction = 1.0;    // probability the origin device is busy training
  double r2_local_probability = 0.5;  // idle device serves locally with this probability
  bool keep_outcomes = false;    // retain per-request outcomes in the report
};

enum class Tier { device, edge, cloud };

const char* to_string(Tier tier);

enum class RoutingStep {
  busy_offload,    // R1: origin busy, request sent to its aggregator (cloud when flat)
  idle_local,      // R2: origin idle and serves the request itself
  idle_offload,    // R2: origin idle, request sent to the aggregator (cloud when flat)
  edge_admit,      // R3: aggregator admits and serves
  edge_overflow,   // R3: aggregator at capacity, request forwarded to the cloud
  cloud_serve,     // global server serves
};

const char* to_string(RoutingStep step);

struct RequestOutcome {
  int device = 0;
  double issued_at_s = 0.0;
  Tier served_at = Tier::device;
  std::optional<int> edge;  // serving or forwarding edge, when one was involved
  double response_ms = 0.0;
  std::vector<RoutingStep> hops;
};

struct TierCounts {
  std::uint64_t device = 0;
  std::uint64_t edge = 0;
  std::uint64_t cloud = 0;

  std::uint64_t total() const { return device + edge + cloud; }
};

struct RuleCounts {
  std::uint64_t r1_offloads = 0;   // busy-device offloads
  std::uint64_t r2_offloads = 0;   // idle-device offloads
  std::uint64_t r3_overflows = 0;  // aggregator forwards to the cloud
};

struct SimReport {
  std::uint64_t total_requests = 0;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;  // sample standard deviation
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double p99_ms = 0.0;
  TierCounts served;
  RuleCounts offloads;
  std::vector<RequestOutcome> outcomes;  // populated when keep_outcomes
};

// Serving scheme under simulation: flat FL has no edge tier (busy devices
// forward straight to the global server); hierarchical schemes route via an
// assignment produced by any solver. Solutions that overload an edge are
// legitimate inputs here: capacity pressure surfaces as R3 overflow.
class Scheme {
 public:
  static Scheme flat() { return Scheme{}; }
  static Scheme hierarchical(Solution solution);

  bool is_flat() const { return !solution_.has_value(); }
  const Solution& solution() const { return *solution_; }

 private:
  Scheme() = default;
  std::optional<Solution> solution_;
};

// Event-driven run: each device issues requests as a Poisson process of
// rate lambda * lambda_scale over `duration_s`, routed by R1-R3. An
// aggregator admits a busy-device request while its admitted busy-device
// count over the trailing 1-second window stays below capacity; idle-device
// requests are admitted only while the total admitted count stays below
// capacity (busy traffic has priority). Deterministic for a fixed seed.
SimReport simulate(const HflopInstance& instance, const Scheme& scheme,
                   const SimConfig& config);

struct SweepRow {
  std::string scheme;
  double speedup = 0.0;
  double mean_ms = 0.0;
};

// One simulate run per (scheme, speedup) pair, all sharing the configured
// seed so the curves are paired samples.
std::vector<SweepRow> sweep_speedup(
    const HflopInstance& instance,
    const std::vector<std::pair<std::string, Scheme>>& schemes,
    const SimConfig& config, const std::vector<double>& speedups);

// Smallest swept speedup at which the scheme named `flat` has a strictly
// lower mean than every other scheme, if any.
std::optional<double> crossover_speedup(const std::vector<SweepRow>& rows,
                                        const std::string& flat_name = "flat");

}  // namespace hflop
