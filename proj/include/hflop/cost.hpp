#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hflop/solver.hpp"
#include "hflop/topology.hpp"

namespace hflop {

// Traffic accounting until training convergence. Byte totals are exact
// integer arithmetic; KB here is 1000 bytes.
struct CostParams {
  std::uint64_t model_size_bytes = 594 * 1000ULL;  // serialized model payload
  int total_local_rounds = 100;  // aggregation rounds treated as convergence
  bool count_both_directions = true;  // upload and download both metered
};

struct CostBreakdown {
  std::uint64_t device_edge_bytes = 0;
  std::uint64_t edge_cloud_bytes = 0;
  std::uint64_t device_cloud_bytes = 0;

  std::uint64_t total() const {
    return device_edge_bytes + edge_cloud_bytes + device_cloud_bytes;
  }
};

struct CostReport {
  std::string scheme;
  std::uint64_t metered_bytes = 0;
  CostBreakdown breakdown;
  std::optional<double> savings_vs_flat;
};

// Flat FL baseline: every device exchanges models with the global server
// each aggregation round, all of it over metered links.
CostReport cost_until_convergence(const HflopInstance& instance,
                                  const CostParams& params);

// Hierarchical schemes: assigned device-edge pairs with nonzero transfer
// cost are metered every local round; placed edges with nonzero cloud cost
// are metered every global round (floor(total_local_rounds / l) of them).
// Traffic on zero-cost links contributes nothing. The solution must be
// feasible.
CostReport cost_until_convergence(const HflopInstance& instance,
                                  const Solution& solution,
                                  const CostParams& params);

struct SavingsDraw {
  int m = 0;
  std::string scheme;
  std::uint64_t seed = 0;
  std::uint64_t metered_bytes = 0;
  double savings = 0.0;
};

struct SavingsPoint {
  int m = 0;
  std::string scheme;
  double mean_savings = 0.0;
  double ci95_half_width = 0.0;
  int samples = 0;
  int redraws = 0;  // infeasible draws replaced by a fresh seed
};

struct SavingsCurveParams {
  int n = 200;
  std::vector<int> edge_densities{5, 10, 20, 50};
  int seeds = 30;
  std::uint64_t base_seed = 1;
  Interval lambda_range{1.0, 5.0};
  // Capacity draw expressed as a multiple of the mean per-edge demand
  // (n * mean lambda / m), so feasibility pressure is comparable across
  // edge densities.
  Interval capacity_headroom{1.0, 2.0};
  int local_rounds_per_global = 2;
  CostParams cost;
};

struct SavingsCurve {
  std::vector<SavingsDraw> draws;    // one row per (m, seed, scheme)
  std::vector<SavingsPoint> points;  // aggregated per (m, scheme)
};

// For each edge density and seed: generate a uniform-cost instance with
// all devices participating, solve the capacitated and uncapacitated
// problems, and compare metered traffic against the flat baseline.
// Infeasible draws are replaced with a fresh derived seed and counted.
SavingsCurve savings_curve(const SavingsCurveParams& params);

// Delimited-text emitters (dot decimal separator, header row).
void write_cost_rows(std::ostream& out, const std::vector<SavingsDraw>& draws, int n);
void write_savings_summary(std::ostream& out, const std::vector<SavingsPoint>& points,
                           int n);

}  // namespace hflop
