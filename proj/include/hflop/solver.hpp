#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hflop/fixed_point.hpp"
#include "hflop/topology.hpp"

namespace hflop {

enum class SolverKind { exact, brute_force, greedy, uncapacitated };

const char* to_string(SolverKind kind);

struct SolverStats {
  std::uint64_t nodes_explored = 0;
  double elapsed_ms = 0.0;
};

// An assignment of devices to edge aggregators. `assignment[i]` holds the
// edge position device i is associated with, or nullopt when the device
// does not participate; at most one edge per device is structural.
// `placements[j]` mirrors whether an aggregator runs at edge j.
struct Solution {
  std::vector<std::optional<int>> assignment;
  std::vector<bool> placements;
  Micros objective = 0;
  SolverKind kind = SolverKind::exact;
  bool proven_optimal = false;
  double gap = 0.0;
  SolverStats stats;

  double objective_value() const { return from_micros(objective); }
  int assigned_count() const;

  // Derives placements (an edge is placed iff it has at least one assignee,
  // which makes the placement-consistency constraints structural) and
  // evaluates the objective.
  static Solution from_assignment(const HflopInstance& instance,
                                  std::vector<std::optional<int>> assignment,
                                  SolverKind kind);
};

enum class SolveStatus {
  optimal,     // solution present and proven optimal
  feasible,    // solution present, optimality not proven (time limit)
  infeasible,  // proven: no assignment meets participation under capacities
  unknown,     // time limit hit before any feasible solution was found
};

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::unknown;
  std::optional<Solution> solution;

  bool has_solution() const { return solution.has_value(); }
};

enum class ViolationKind {
  capacity,               // assigned load exceeds edge capacity
  placement_consistency,  // device assigned to an edge without an aggregator
  orphan_aggregator,      // aggregator placed with no associated devices
  participation,          // fewer assigned devices than required
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int subject = 0;  // device or edge position, depending on kind
  double measured = 0.0;
  double bound = 0.0;
};

std::string describe(const Violation& violation);

// Eq-(1)-style evaluation: sum of device-edge transfer costs times l plus
// cloud costs of placed edges. Uses the solution's placements as given.
Micros objective(const HflopInstance& instance, const Solution& solution);

// Empty result iff the solution satisfies every constraint; otherwise one
// entry per violated constraint instance, with measured and bound values
// recomputable from the inputs. Capacity is checked in exact fixed point.
std::vector<Violation> check_feasible(const HflopInstance& instance,
                                      const Solution& solution);

struct BruteForceLimits {
  int max_devices = 10;
  int max_edges = 4;
};

// Full enumeration of every device -> (edge or unassigned) mapping with
// placements derived from use. Ties break to the lexicographically smallest
// assignment vector (unassigned < edge 0 < edge 1 < ...). Intended as the
// oracle for the branch-and-bound path; guarded against instances too large
// to enumerate.
SolveResult solve_brute_force(const HflopInstance& instance,
                              BruteForceLimits limits = {});

struct ExactOptions {
  std::optional<std::chrono::milliseconds> time_limit;
};

// Depth-first branch and bound over device assignment decisions, devices
// ordered by descending workload. Nodes are pruned with a combinatorial
// bound (cheapest remaining assignments plus forced aggregator openings)
// strengthened by a dual-ascent bound on the capacity-relaxed assignment
// subproblem. Deterministic: fixed decision order and strict-improvement
// incumbent updates. With a time limit, returns the best incumbent and an
// optimality-gap bound instead of running to completion.
SolveResult solve_exact(const HflopInstance& instance, ExactOptions options = {});

// solve_exact on a copy of the instance where every edge capacity is
// infinite; a communication-cost lower bound for the capacitated problem.
SolveResult solve_uncapacitated(const HflopInstance& instance,
                                ExactOptions options = {});

// Construction by descending workload picking the cheapest feasible edge,
// a displacement repair pass to reach the participation minimum, then
// first-improvement local search (single-device reassignment, unassignment
// where participation slack allows, and close-and-redistribute on placed
// edges) until a fixed point.
SolveResult solve_greedy(const HflopInstance& instance);

struct CflpFacility {
  double setup_cost = 0.0;
  double capacity = 0.0;
};

// Capacitated facility location with unsplittable flows: every client's
// whole demand is served by exactly one open facility.
struct CflpInstance {
  std::vector<CflpFacility> facilities;
  std::vector<double> demands;
  std::vector<double> transport;  // clients x facilities, row-major

  int client_count() const { return static_cast<int>(demands.size()); }
  int facility_count() const { return static_cast<int>(facilities.size()); }
  double transport_cost(int client, int facility) const {
    return transport[static_cast<std::size_t>(client) * facilities.size() + facility];
  }
};

// Facilities become edge hosts (setup cost as the edge-cloud cost), clients
// become devices (demand as workload), transport costs become device-edge
// costs, all clients must be covered (T = n) and l = 1. Optimal objectives
// coincide.
HflopInstance reduce_from_cflp(const CflpInstance& cflp);

}  // namespace hflop
