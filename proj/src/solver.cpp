#include "hflop/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hflop {

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::exact: return "exact";
    case SolverKind::brute_force: return "brute_force";
    case SolverKind::greedy: return "greedy";
    case SolverKind::uncapacitated: return "uncapacitated";
  }
  return "unknown";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::placement_consistency: return "placement_consistency";
    case ViolationKind::orphan_aggregator: return "orphan_aggregator";
    case ViolationKind::participation: return "participation";
  }
  return "unknown";
}

std::string describe(const Violation& v) {
  std::string subject_kind =
      (v.kind == ViolationKind::capacity || v.kind == ViolationKind::orphan_aggregator)
          ? "edge "
          : (v.kind == ViolationKind::participation ? "instance" : "device ");
  std::string subject =
      v.kind == ViolationKind::participation ? "" : std::to_string(v.subject);
  return std::string(to_string(v.kind)) + " at " + subject_kind + subject +
         ": measured " + std::to_string(v.measured) + " vs bound " +
         std::to_string(v.bound);
}

namespace {

// Instance data converted once to integer micro-units so every solver
// accumulates cost and load exactly, independent of summation order.
struct SolverContext {
  int n = 0;
  int m = 0;
  int min_participation = 0;
  std::vector<Micros> lambda;  // per device
  std::vector<Micros> cap;     // per edge; kMicrosInf marks infinite
  std::vector<Micros> ce;      // per edge cloud cost
  std::vector<Micros> cdl;     // n x m device-edge cost, times l

  // per device: (cdl, edge) ascending, for cheapest-feasible scans
  std::vector<std::vector<std::pair<Micros, int>>> sorted_cdl;

  explicit SolverContext(const HflopInstance& inst, bool relax_capacity = false) {
    const Topology& topo = inst.topology;
    n = topo.device_count();
    m = topo.edge_count();
    min_participation = inst.min_participation;
    lambda.reserve(n);
    for (const Device& d : topo.devices()) {
      lambda.push_back(to_micros(d.lambda));
    }
    cap.reserve(m);
    ce.reserve(m);
    for (const EdgeNode& e : topo.edges()) {
      cap.push_back(relax_capacity || e.capacity.is_infinite()
                        ? kMicrosInf
                        : to_micros(e.capacity.value()));
      ce.push_back(to_micros(e.cloud_cost));
    }
    cdl.resize(static_cast<std::size_t>(n) * m);
    sorted_cdl.resize(n);
    for (int i = 0; i < n; ++i) {
      sorted_cdl[i].reserve(m);
      for (int j = 0; j < m; ++j) {
        const Micros c = to_micros(topo.device_edge_cost(i, j)) *
                         static_cast<Micros>(inst.local_rounds_per_global);
        cdl[static_cast<std::size_t>(i) * m + j] = c;
        sorted_cdl[i].emplace_back(c, j);
      }
      std::sort(sorted_cdl[i].begin(), sorted_cdl[i].end());
    }
  }

  Micros cost(int i, int j) const { return cdl[static_cast<std::size_t>(i) * m + j]; }
};

// Mutable assignment state shared by the constructive and search solvers.
struct AssignState {
  const SolverContext* ctx;
  std::vector<std::optional<int>> assignment;
  std::vector<Micros> remaining;  // per edge
  std::vector<int> users;         // per edge
  int assigned = 0;
  Micros cost = 0;

  explicit AssignState(const SolverContext& c)
      : ctx(&c),
        assignment(c.n),
        remaining(c.cap),
        users(c.m, 0) {}

  bool fits(int i, int j) const {
    return remaining[j] == kMicrosInf || remaining[j] >= ctx->lambda[i];
  }

  Micros marginal(int i, int j) const {
    return ctx->cost(i, j) + (users[j] > 0 ? 0 : ctx->ce[j]);
  }

  void assign(int i, int j) {
    assignment[i] = j;
    if (users[j]++ == 0) {
      cost += ctx->ce[j];
    }
    cost += ctx->cost(i, j);
    if (remaining[j] != kMicrosInf) {
      remaining[j] -= ctx->lambda[i];
    }
    ++assigned;
  }

  void unassign(int i) {
    const int j = *assignment[i];
    assignment[i] = std::nullopt;
    if (--users[j] == 0) {
      cost -= ctx->ce[j];
    }
    cost -= ctx->cost(i, j);
    if (remaining[j] != kMicrosInf) {
      remaining[j] += ctx->lambda[i];
    }
    --assigned;
  }
};

std::vector<int> devices_by_descending_lambda(const SolverContext& ctx) {
  std::vector<int> order(ctx.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return ctx.lambda[a] > ctx.lambda[b];
  });
  return order;
}

double elapsed_ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

}  // namespace

int Solution::assigned_count() const {
  int count = 0;
  for (const auto& a : assignment) {
    count += a.has_value() ? 1 : 0;
  }
  return count;
}

Solution Solution::from_assignment(const HflopInstance& instance,
                                   std::vector<std::optional<int>> assignment,
                                   SolverKind kind) {
  const int n = instance.device_count();
  const int m = instance.edge_count();
  if (static_cast<int>(assignment.size()) != n) {
    throw std::invalid_argument("assignment size does not match device count");
  }
  Solution sol;
  sol.assignment = std::move(assignment);
  sol.placements.assign(m, false);
  sol.kind = kind;
  for (const auto& a : sol.assignment) {
    if (a) {
      if (*a < 0 || *a >= m) {
        throw std::invalid_argument("assignment references edge out of range");
      }
      sol.placements[*a] = true;
    }
  }
  sol.objective = hflop::objective(instance, sol);
  return sol;
}

Micros objective(const HflopInstance& instance, const Solution& solution) {
  const Topology& topo = instance.topology;
  const int n = topo.device_count();
  const int m = topo.edge_count();
  if (static_cast<int>(solution.assignment.size()) != n ||
      static_cast<int>(solution.placements.size()) != m) {
    throw std::invalid_argument("solution dimensions do not match instance");
  }
  Micros total = 0;
  for (int i = 0; i < n; ++i) {
    if (solution.assignment[i]) {
      const int j = *solution.assignment[i];
      if (j < 0 || j >= m) {
        throw std::invalid_argument("assignment references edge out of range");
      }
      total += to_micros(topo.device_edge_cost(i, j)) *
               static_cast<Micros>(instance.local_rounds_per_global);
    }
  }
  for (int j = 0; j < m; ++j) {
    if (solution.placements[j]) {
      total += to_micros(topo.edges()[j].cloud_cost);
    }
  }
  return total;
}

std::vector<Violation> check_feasible(const HflopInstance& instance,
                                      const Solution& solution) {
  const Topology& topo = instance.topology;
  const int n = topo.device_count();
  const int m = topo.edge_count();
  if (static_cast<int>(solution.assignment.size()) != n ||
      static_cast<int>(solution.placements.size()) != m) {
    throw std::invalid_argument("solution dimensions do not match instance");
  }

  std::vector<Violation> violations;
  std::vector<Micros> load(m, 0);
  std::vector<int> users(m, 0);
  int assigned = 0;

  for (int i = 0; i < n; ++i) {
    if (!solution.assignment[i]) {
      continue;
    }
    const int j = *solution.assignment[i];
    if (j < 0 || j >= m) {
      throw std::invalid_argument("assignment references edge out of range");
    }
    ++assigned;
    ++users[j];
    load[j] += to_micros(topo.devices()[i].lambda);
    if (!solution.placements[j]) {
      violations.push_back(Violation{ViolationKind::placement_consistency, i, 1.0, 0.0});
    }
  }

  for (int j = 0; j < m; ++j) {
    const Capacity& cap = topo.edges()[j].capacity;
    if (!cap.is_infinite() && load[j] > to_micros(cap.value())) {
      violations.push_back(Violation{ViolationKind::capacity, j, from_micros(load[j]),
                                     cap.value()});
    }
    if (solution.placements[j] && users[j] == 0) {
      violations.push_back(Violation{ViolationKind::orphan_aggregator, j, 0.0, 1.0});
    }
  }

  if (assigned < instance.min_participation) {
    violations.push_back(Violation{ViolationKind::participation, 0,
                                   static_cast<double>(assigned),
                                   static_cast<double>(instance.min_participation)});
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

namespace {

struct BruteSearch {
  const SolverContext& ctx;
  AssignState state;
  std::vector<std::optional<int>> best_assignment;
  Micros best_cost = kMicrosInf;
  bool found = false;

  explicit BruteSearch(const SolverContext& c) : ctx(c), state(c) {}

  // Lexicographic enumeration (unassigned < edge 0 < edge 1 < ...);
  // strict-improvement updates make the first optimum found, and therefore
  // the kept one, the lexicographically smallest.
  void run(int device) {
    if (found && state.cost >= best_cost) {
      return;  // completions only add nonnegative cost
    }
    if (device == ctx.n) {
      if (state.assigned >= ctx.min_participation && state.cost < best_cost) {
        best_cost = state.cost;
        best_assignment = state.assignment;
        found = true;
      }
      return;
    }
    if (state.assigned + (ctx.n - device) < ctx.min_participation) {
      return;  // participation can no longer be met
    }
    run(device + 1);  // unassigned first
    for (int j = 0; j < ctx.m; ++j) {
      if (!state.fits(device, j)) {
        continue;
      }
      state.assign(device, j);
      run(device + 1);
      state.unassign(device);
    }
  }
};

}  // namespace

SolveResult solve_brute_force(const HflopInstance& instance, BruteForceLimits limits) {
  const auto start = std::chrono::steady_clock::now();
  if (instance.device_count() > limits.max_devices ||
      instance.edge_count() > limits.max_edges) {
    throw std::invalid_argument("instance too large for exhaustive enumeration");
  }
  SolverContext ctx(instance);
  BruteSearch search(ctx);
  search.run(0);

  SolveResult result;
  if (!search.found) {
    result.status = SolveStatus::infeasible;
    return result;
  }
  Solution sol = Solution::from_assignment(instance, std::move(search.best_assignment),
                                           SolverKind::brute_force);
  sol.proven_optimal = true;
  sol.gap = 0.0;
  sol.stats.elapsed_ms = elapsed_ms_since(start);
  result.status = SolveStatus::optimal;
  result.solution = std::move(sol);
  return result;
}

// ---------------------------------------------------------------------------
// Greedy construction + local search
// ---------------------------------------------------------------------------

namespace {

// Cheapest feasible edge by (marginal cost, index); -1 when none fits.
int cheapest_edge(const AssignState& s, int device) {
  int best = -1;
  Micros best_marginal = kMicrosInf;
  for (int j = 0; j < s.ctx->m; ++j) {
    if (!s.fits(device, j)) {
      continue;
    }
    const Micros marginal = s.marginal(device, j);
    if (marginal < best_marginal) {
      best_marginal = marginal;
      best = j;
    }
  }
  return best;
}

// Attempts to free room for `device` on some edge by relocating a single
// already-assigned device elsewhere. First feasible relocation in scan
// order wins. Used only to reach the participation minimum.
bool displace_and_assign(AssignState& s, int device) {
  for (int j = 0; j < s.ctx->m; ++j) {
    if (s.fits(device, j)) {
      s.assign(device, j);
      return true;
    }
    for (int v = 0; v < s.ctx->n; ++v) {
      if (!s.assignment[v] || *s.assignment[v] != j) {
        continue;
      }
      for (int j2 = 0; j2 < s.ctx->m; ++j2) {
        if (j2 == j || !s.fits(v, j2)) {
          continue;
        }
        s.unassign(v);
        s.assign(v, j2);
        if (s.fits(device, j)) {
          s.assign(device, j);
          return true;
        }
        s.unassign(v);
        s.assign(v, j);
        break;  // one relocation attempt per blocked device
      }
    }
  }
  return false;
}

bool improve_single_moves(AssignState& s) {
  bool changed = false;
  for (int i = 0; i < s.ctx->n; ++i) {
    if (!s.assignment[i]) {
      continue;  // assigning an extra device never lowers cost
    }
    const int a = *s.assignment[i];
    if (s.assigned - 1 >= s.ctx->min_participation) {
      const Micros delta =
          -s.ctx->cost(i, a) - (s.users[a] == 1 ? s.ctx->ce[a] : 0);
      if (delta < 0) {
        s.unassign(i);
        changed = true;
        continue;
      }
    }
    for (int j = 0; j < s.ctx->m; ++j) {
      if (j == a || !s.fits(i, j)) {
        continue;
      }
      const Micros delta = s.ctx->cost(i, j) - s.ctx->cost(i, a) +
                           (s.users[j] == 0 ? s.ctx->ce[j] : 0) -
                           (s.users[a] == 1 ? s.ctx->ce[a] : 0);
      if (delta < 0) {
        s.unassign(i);
        s.assign(i, j);
        changed = true;
        break;
      }
    }
  }
  return changed;
}

bool improve_close_edge(AssignState& s, const std::vector<int>& order) {
  for (int j = 0; j < s.ctx->m; ++j) {
    if (s.users[j] == 0) {
      continue;
    }
    std::vector<int> members;
    for (int i : order) {
      if (s.assignment[i] && *s.assignment[i] == j) {
        members.push_back(i);
      }
    }
    const Micros cost_before = s.cost;
    for (int i : members) {
      s.unassign(i);
    }
    std::vector<std::pair<int, int>> placed;  // (device, edge) applied so far
    bool ok = true;
    for (int i : members) {
      int best = -1;
      Micros best_marginal = kMicrosInf;
      for (int j2 = 0; j2 < s.ctx->m; ++j2) {
        if (j2 == j || !s.fits(i, j2)) {
          continue;
        }
        const Micros marginal = s.marginal(i, j2);
        if (marginal < best_marginal) {
          best_marginal = marginal;
          best = j2;
        }
      }
      if (best < 0) {
        ok = false;
        break;
      }
      s.assign(i, best);
      placed.emplace_back(i, best);
    }
    if (ok && s.cost < cost_before) {
      return true;
    }
    // roll back
    for (auto it = placed.rbegin(); it != placed.rend(); ++it) {
      s.unassign(it->first);
    }
    for (int i : members) {
      s.assign(i, j);
    }
  }
  return false;
}

// Shared by solve_greedy and the branch-and-bound incumbent seeding.
bool greedy_construct(const SolverContext& ctx, AssignState& state) {
  const std::vector<int> order = devices_by_descending_lambda(ctx);
  for (int i : order) {
    const int j = cheapest_edge(state, i);
    if (j >= 0) {
      state.assign(i, j);
    }
  }
  // repair toward the participation minimum
  while (state.assigned < ctx.min_participation) {
    int pick = -1;
    Micros pick_marginal = kMicrosInf;
    for (int i = 0; i < ctx.n; ++i) {
      if (state.assignment[i]) {
        continue;
      }
      const int j = cheapest_edge(state, i);
      if (j >= 0 && state.marginal(i, j) < pick_marginal) {
        pick_marginal = state.marginal(i, j);
        pick = i;
      }
    }
    if (pick >= 0) {
      state.assign(pick, cheapest_edge(state, pick));
      continue;
    }
    int blocked = -1;
    for (int i = 0; i < ctx.n && blocked < 0; ++i) {
      if (!state.assignment[i]) {
        blocked = i;
      }
    }
    if (blocked < 0 || !displace_and_assign(state, blocked)) {
      return false;
    }
  }
  // first-improvement local search to a fixed point
  bool changed = true;
  while (changed) {
    changed = improve_single_moves(state);
    changed = improve_close_edge(state, order) || changed;
  }
  return true;
}

}  // namespace

SolveResult solve_greedy(const HflopInstance& instance) {
  const auto start = std::chrono::steady_clock::now();
  SolverContext ctx(instance);
  AssignState state(ctx);

  SolveResult result;
  if (!greedy_construct(ctx, state)) {
    result.status = SolveStatus::infeasible;
    return result;
  }
  Solution sol = Solution::from_assignment(instance, std::move(state.assignment),
                                           SolverKind::greedy);
  sol.proven_optimal = false;
  sol.stats.elapsed_ms = elapsed_ms_since(start);
  result.status = SolveStatus::feasible;
  result.solution = std::move(sol);
  return result;
}

// ---------------------------------------------------------------------------
// Exact branch and bound
// ---------------------------------------------------------------------------

namespace {

// Combinatorial lower bound on the cost still to be paid from a partial
// assignment: at least q = max(0, T - assigned) of the undecided devices
// must be assigned, each paying no less than its cheapest capacity-feasible
// transfer cost; if the open aggregators cannot absorb the q lightest
// undecided workloads, at least one more aggregator must open, paying no
// less than the cheapest unplaced cloud cost. Returns kMicrosInf when no
// feasible completion exists.
Micros simple_future_bound(const SolverContext& ctx, const AssignState& s,
                           const std::vector<int>& order, int depth,
                           std::vector<Micros>& mins_buf,
                           std::vector<Micros>& lambda_buf) {
  const int u = ctx.n - depth;
  const int q = std::max(0, ctx.min_participation - s.assigned);
  if (q > u) {
    return kMicrosInf;
  }
  if (q == 0 && u == 0) {
    return 0;
  }

  mins_buf.clear();
  lambda_buf.clear();
  for (int pos = depth; pos < ctx.n; ++pos) {
    const int i = order[pos];
    Micros cheapest = kMicrosInf;
    for (const auto& [c, j] : ctx.sorted_cdl[i]) {
      if (s.fits(i, j)) {
        cheapest = c;
        break;
      }
    }
    if (cheapest == kMicrosInf) {
      if (q == u) {
        return kMicrosInf;  // this device must be assigned but cannot be
      }
      continue;
    }
    mins_buf.push_back(cheapest);
    lambda_buf.push_back(ctx.lambda[i]);
  }
  if (static_cast<int>(mins_buf.size()) < q) {
    return kMicrosInf;
  }
  if (q == 0) {
    return 0;
  }

  std::nth_element(mins_buf.begin(), mins_buf.begin() + (q - 1), mins_buf.end());
  Micros assign_lb = 0;
  for (int t = 0; t < q; ++t) {
    assign_lb += mins_buf[t];
  }

  // opening-necessity term
  std::nth_element(lambda_buf.begin(), lambda_buf.begin() + (q - 1), lambda_buf.end());
  Micros need = 0;
  for (int t = 0; t < q; ++t) {
    need += lambda_buf[t];
  }
  Micros open_room = 0;
  bool open_infinite = false;
  for (int j = 0; j < ctx.m; ++j) {
    if (s.users[j] > 0) {
      if (s.remaining[j] == kMicrosInf) {
        open_infinite = true;
        break;
      }
      open_room += s.remaining[j];
    }
  }
  if (!open_infinite && open_room < need) {
    Micros cheapest_open = kMicrosInf;
    for (int j = 0; j < ctx.m; ++j) {
      if (s.users[j] == 0) {
        cheapest_open = std::min(cheapest_open, ctx.ce[j]);
      }
    }
    if (cheapest_open == kMicrosInf) {
      return kMicrosInf;  // must open another aggregator but none is left
    }
    assign_lb += cheapest_open;
  }
  return assign_lb;
}

// Dual-ascent lower bound for the "all undecided devices must be assigned"
// case, on the capacity-relaxed subproblem: open aggregators have zero
// opening cost, unplaced ones cost their cloud cost, arcs are restricted to
// currently capacity-feasible pairs. The ascent raises per-device dual
// values to breakpoints of their sorted transfer costs while facility
// slacks allow; the sum of duals lower-bounds any completion's cost.
struct DualAscent {
  std::vector<Micros> slack;
  std::vector<std::vector<std::pair<Micros, int>>> arcs;
  std::vector<Micros> dual;
  std::vector<std::size_t> prefix;

  Micros bound(const SolverContext& ctx, const AssignState& s,
               const std::vector<int>& order, int depth) {
    const int u = ctx.n - depth;
    slack.assign(ctx.m, 0);
    for (int j = 0; j < ctx.m; ++j) {
      slack[j] = s.users[j] > 0 ? 0 : ctx.ce[j];
    }
    arcs.resize(u);
    dual.assign(u, 0);
    prefix.assign(u, 0);
    for (int pos = 0; pos < u; ++pos) {
      const int i = order[depth + pos];
      auto& list = arcs[pos];
      list.clear();
      for (const auto& arc : ctx.sorted_cdl[i]) {
        if (s.fits(i, arc.second)) {
          list.push_back(arc);
        }
      }
      if (list.empty()) {
        return kMicrosInf;  // unassignable but required
      }
      dual[pos] = list.front().first;
    }

    bool raised = true;
    while (raised) {
      raised = false;
      for (int pos = 0; pos < u; ++pos) {
        auto& list = arcs[pos];
        while (prefix[pos] < list.size() && list[prefix[pos]].first <= dual[pos]) {
          ++prefix[pos];
        }
        Micros allowance = kMicrosInf;
        for (std::size_t t = 0; t < prefix[pos]; ++t) {
          allowance = std::min(allowance, slack[list[t].second]);
          if (allowance == 0) {
            break;
          }
        }
        if (allowance == 0) {
          continue;
        }
        const Micros breakpoint =
            prefix[pos] < list.size() ? list[prefix[pos]].first - dual[pos] : kMicrosInf;
        const Micros raise = std::min(allowance, breakpoint);
        if (raise <= 0 || raise == kMicrosInf) {
          continue;
        }
        dual[pos] += raise;
        for (std::size_t t = 0; t < prefix[pos]; ++t) {
          slack[list[t].second] -= raise;
        }
        raised = true;
      }
    }

    Micros total = 0;
    for (int pos = 0; pos < u; ++pos) {
      total += dual[pos];
    }
    return total;
  }
};

struct BnbSearch {
  const SolverContext& ctx;
  const std::vector<int> order;
  AssignState state;
  DualAscent dual;
  std::vector<Micros> mins_buf;
  std::vector<Micros> lambda_buf;
  std::vector<std::vector<std::pair<Micros, int>>> child_buf;

  std::vector<std::optional<int>> best_assignment;
  Micros best_cost = kMicrosInf;
  bool has_incumbent = false;

  std::uint64_t nodes = 0;
  std::chrono::steady_clock::time_point deadline;
  bool has_deadline = false;
  bool timed_out = false;

  // Nodes with at least this many undecided devices get the dual bound;
  // below it the simple bound plus enumeration is cheaper.
  static constexpr int kDualThreshold = 12;

  explicit BnbSearch(const SolverContext& c)
      : ctx(c), order(devices_by_descending_lambda(c)), state(c) {
    child_buf.resize(c.n + 1);
  }

  Micros node_bound(int depth) {
    const Micros simple =
        simple_future_bound(ctx, state, order, depth, mins_buf, lambda_buf);
    if (simple == kMicrosInf) {
      return kMicrosInf;
    }
    Micros future = simple;
    const int u = ctx.n - depth;
    const int q = std::max(0, ctx.min_participation - state.assigned);
    if (q == u && u >= kDualThreshold) {
      const Micros with_simple = state.cost + simple;
      if (!has_incumbent || with_simple < best_cost) {
        const Micros d = dual.bound(ctx, state, order, depth);
        if (d == kMicrosInf) {
          return kMicrosInf;
        }
        future = std::max(future, d);
      }
    }
    return state.cost + future;
  }

  void search(int depth) {
    ++nodes;
    if (has_deadline && (nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
    }
    if (timed_out) {
      return;
    }
    if (depth == ctx.n) {
      if (state.assigned >= ctx.min_participation &&
          (!has_incumbent || state.cost < best_cost)) {
        best_cost = state.cost;
        best_assignment = state.assignment;
        has_incumbent = true;
      }
      return;
    }

    const Micros bound = node_bound(depth);
    if (bound == kMicrosInf || (has_incumbent && bound >= best_cost)) {
      return;
    }

    const int i = order[depth];
    const int undecided_after = ctx.n - depth - 1;
    auto& children = child_buf[depth];
    children.clear();
    if (state.assigned + undecided_after >= ctx.min_participation) {
      children.emplace_back(0, -1);  // leave unassigned
    }
    for (int j = 0; j < ctx.m; ++j) {
      if (state.fits(i, j)) {
        children.emplace_back(state.marginal(i, j), j);
      }
    }
    std::sort(children.begin(), children.end(),
              [](const auto& a, const auto& b) {
                return a.first != b.first ? a.first < b.first : a.second < b.second;
              });

    for (const auto& [marginal, j] : children) {
      if (timed_out) {
        return;
      }
      if (j < 0) {
        search(depth + 1);
      } else {
        state.assign(i, j);
        search(depth + 1);
        state.unassign(i);
      }
    }
  }
};

SolveResult run_branch_and_bound(const HflopInstance& instance, ExactOptions options,
                                 bool relax_capacity, SolverKind kind) {
  const auto start = std::chrono::steady_clock::now();
  SolverContext ctx(instance, relax_capacity);
  BnbSearch search(ctx);
  if (options.time_limit) {
    search.deadline = start + *options.time_limit;
    search.has_deadline = true;
  }

  // Greedy incumbent: pruning is effective from the first node.
  {
    AssignState seed(ctx);
    if (greedy_construct(ctx, seed)) {
      search.best_assignment = seed.assignment;
      search.best_cost = seed.cost;
      search.has_incumbent = true;
    }
  }

  const Micros root_lb = search.node_bound(0);
  search.search(0);

  SolveResult result;
  if (!search.has_incumbent) {
    result.status = search.timed_out ? SolveStatus::unknown : SolveStatus::infeasible;
    return result;
  }

  const bool proven = !search.timed_out || search.best_cost <= root_lb;
  Solution sol = Solution::from_assignment(instance, std::move(search.best_assignment),
                                           kind);
  assert(sol.objective == search.best_cost);
  sol.proven_optimal = proven;
  if (proven) {
    sol.gap = 0.0;
  } else if (search.best_cost > 0 && root_lb != kMicrosInf) {
    sol.gap = static_cast<double>(search.best_cost - std::max<Micros>(root_lb, 0)) /
              static_cast<double>(search.best_cost);
  } else {
    sol.gap = 1.0;
  }
  sol.stats.nodes_explored = search.nodes;
  sol.stats.elapsed_ms = elapsed_ms_since(start);
  result.status = proven ? SolveStatus::optimal : SolveStatus::feasible;
  result.solution = std::move(sol);
  return result;
}

}  // namespace

SolveResult solve_exact(const HflopInstance& instance, ExactOptions options) {
  return run_branch_and_bound(instance, options, /*relax_capacity=*/false,
                              SolverKind::exact);
}

SolveResult solve_uncapacitated(const HflopInstance& instance, ExactOptions options) {
  return run_branch_and_bound(instance, options, /*relax_capacity=*/true,
                              SolverKind::uncapacitated);
}

// ---------------------------------------------------------------------------
// CFLP reduction
// ---------------------------------------------------------------------------

HflopInstance reduce_from_cflp(const CflpInstance& cflp) {
  const int n = cflp.client_count();
  const int m = cflp.facility_count();
  if (n < 1 || m < 1) {
    throw std::invalid_argument("need at least one client and one facility");
  }
  if (cflp.transport.size() != static_cast<std::size_t>(n) * m) {
    throw std::invalid_argument("transport matrix dimensions do not match");
  }
  for (const CflpFacility& f : cflp.facilities) {
    if (!(f.setup_cost >= 0.0) || !(f.capacity >= 0.0)) {
      throw std::invalid_argument("facility costs and capacities must be >= 0");
    }
  }
  for (double d : cflp.demands) {
    if (!(d >= 0.0)) {
      throw std::invalid_argument("demands must be >= 0");
    }
  }
  for (double t : cflp.transport) {
    if (!(t >= 0.0)) {
      throw std::invalid_argument("transport costs must be >= 0");
    }
  }

  std::vector<Device> devices(n);
  for (int i = 0; i < n; ++i) {
    devices[i].id = i;
    devices[i].lambda = cflp.demands[i];
  }
  std::vector<EdgeNode> edges(m);
  for (int j = 0; j < m; ++j) {
    edges[j].id = j;
    edges[j].capacity = Capacity::of(cflp.facilities[j].capacity);
    edges[j].cloud_cost = cflp.facilities[j].setup_cost;
  }
  return HflopInstance(
      Topology(std::move(devices), std::move(edges), cflp.transport),
      /*l=*/1, /*t=*/n);
}

}  // namespace hflop
