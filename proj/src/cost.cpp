#include "hflop/cost.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hflop/rng.hpp"

namespace hflop {

namespace {

void validate_params(const CostParams& params) {
  if (params.model_size_bytes == 0) {
    throw std::invalid_argument("model size must be > 0");
  }
  if (params.total_local_rounds < 1) {
    throw std::invalid_argument("total_local_rounds must be >= 1");
  }
}

std::uint64_t dirs(const CostParams& params) {
  return params.count_both_directions ? 2 : 1;
}

}  // namespace

CostReport cost_until_convergence(const HflopInstance& instance,
                                  const CostParams& params) {
  validate_params(params);
  CostReport report;
  report.scheme = "flat";
  const std::uint64_t n = static_cast<std::uint64_t>(instance.device_count());
  report.breakdown.device_cloud_bytes =
      n * static_cast<std::uint64_t>(params.total_local_rounds) * dirs(params) *
      params.model_size_bytes;
  report.metered_bytes = report.breakdown.total();
  report.savings_vs_flat = 0.0;
  return report;
}

CostReport cost_until_convergence(const HflopInstance& instance,
                                  const Solution& solution,
                                  const CostParams& params) {
  validate_params(params);
  if (!check_feasible(instance, solution).empty()) {
    throw std::invalid_argument("solution is infeasible for this instance");
  }

  const Topology& topo = instance.topology;
  const std::uint64_t local_rounds =
      static_cast<std::uint64_t>(params.total_local_rounds);
  const std::uint64_t global_rounds =
      local_rounds / static_cast<std::uint64_t>(instance.local_rounds_per_global);
  const std::uint64_t per_link_local = local_rounds * dirs(params) * params.model_size_bytes;
  const std::uint64_t per_link_global =
      global_rounds * dirs(params) * params.model_size_bytes;

  CostReport report;
  report.scheme = to_string(solution.kind);
  for (int i = 0; i < topo.device_count(); ++i) {
    if (solution.assignment[i] &&
        topo.device_edge_cost(i, *solution.assignment[i]) > 0.0) {
      report.breakdown.device_edge_bytes += per_link_local;
    }
  }
  for (int j = 0; j < topo.edge_count(); ++j) {
    if (solution.placements[j] && topo.edges()[j].cloud_cost > 0.0) {
      report.breakdown.edge_cloud_bytes += per_link_global;
    }
  }
  report.metered_bytes = report.breakdown.total();

  const CostReport flat = cost_until_convergence(instance, params);
  if (flat.metered_bytes > 0) {
    report.savings_vs_flat = 1.0 - static_cast<double>(report.metered_bytes) /
                                       static_cast<double>(flat.metered_bytes);
  }
  return report;
}

SavingsCurve savings_curve(const SavingsCurveParams& params) {
  if (params.n < 1 || params.seeds < 1 || params.edge_densities.empty()) {
    throw std::invalid_argument("savings curve needs n >= 1, seeds >= 1 and densities");
  }

  SavingsCurve curve;
  const double mean_lambda = (params.lambda_range.lo + params.lambda_range.hi) / 2.0;

  for (int m : params.edge_densities) {
    std::vector<double> hflop_savings;
    std::vector<double> uncap_savings;
    int redraws = 0;

    for (int k = 0; k < params.seeds; ++k) {
      // deterministic seed chain; infeasible draws advance the attempt index
      int attempt = 0;
      while (true) {
        const std::uint64_t seed =
            Rng::derive(params.base_seed,
                        (static_cast<std::uint64_t>(m) << 32) ^
                            (static_cast<std::uint64_t>(k) << 8) ^
                            static_cast<std::uint64_t>(attempt))
                .next_u64();
        const double per_edge_demand =
            params.n * mean_lambda / static_cast<double>(m);
        const HflopInstance instance = generate_uniform(
            params.n, m, seed, params.lambda_range,
            Interval{params.capacity_headroom.lo * per_edge_demand,
                     params.capacity_headroom.hi * per_edge_demand},
            params.local_rounds_per_global);

        const SolveResult exact = solve_exact(instance);
        if (!exact.has_solution()) {
          ++redraws;
          ++attempt;
          continue;
        }
        const SolveResult uncap = solve_uncapacitated(instance);

        const CostReport exact_cost =
            cost_until_convergence(instance, *exact.solution, params.cost);
        const CostReport uncap_cost =
            cost_until_convergence(instance, *uncap.solution, params.cost);

        curve.draws.push_back(SavingsDraw{m, "hflop", seed, exact_cost.metered_bytes,
                                          *exact_cost.savings_vs_flat});
        curve.draws.push_back(SavingsDraw{m, "uncap", seed, uncap_cost.metered_bytes,
                                          *uncap_cost.savings_vs_flat});
        hflop_savings.push_back(*exact_cost.savings_vs_flat);
        uncap_savings.push_back(*uncap_cost.savings_vs_flat);
        break;
      }
    }

    auto aggregate = [&](const std::vector<double>& values, const char* scheme) {
      double mean = 0.0;
      for (double v : values) {
        mean += v;
      }
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) {
        var += (v - mean) * (v - mean);
      }
      const double sd = values.size() > 1
                            ? std::sqrt(var / static_cast<double>(values.size() - 1))
                            : 0.0;
      const double half_width =
          1.96 * sd / std::sqrt(static_cast<double>(values.size()));
      curve.points.push_back(
          SavingsPoint{m, scheme, mean, half_width,
                       static_cast<int>(values.size()), redraws});
    };
    aggregate(hflop_savings, "hflop");
    aggregate(uncap_savings, "uncap");
  }
  return curve;
}

void write_cost_rows(std::ostream& out, const std::vector<SavingsDraw>& draws, int n) {
  out << "scheme,n,m,seed,metered_bytes,savings_pct\n";
  for (const SavingsDraw& d : draws) {
    out << d.scheme << ',' << n << ',' << d.m << ',' << d.seed << ','
        << d.metered_bytes << ',' << d.savings * 100.0 << '\n';
  }
}

void write_savings_summary(std::ostream& out, const std::vector<SavingsPoint>& points,
                           int n) {
  out << "m,scheme,n,samples,redraws,mean_savings_pct,ci95_half_width_pct\n";
  for (const SavingsPoint& p : points) {
    out << p.m << ',' << p.scheme << ',' << n << ',' << p.samples << ',' << p.redraws
        << ',' << p.mean_savings * 100.0 << ',' << p.ci95_half_width * 100.0 << '\n';
  }
}

}  // namespace hflop
