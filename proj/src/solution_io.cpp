#include "hflop/solution_io.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace hflop {

namespace {

using nlohmann::json;

SolverKind kind_from_string(const std::string& s) {
  if (s == "exact") return SolverKind::exact;
  if (s == "brute_force") return SolverKind::brute_force;
  if (s == "greedy") return SolverKind::greedy;
  if (s == "uncapacitated") return SolverKind::uncapacitated;
  throw std::runtime_error("unknown solver kind: " + s);
}

SolveStatus status_from_string(const std::string& s) {
  if (s == "optimal") return SolveStatus::optimal;
  if (s == "feasible") return SolveStatus::feasible;
  if (s == "infeasible") return SolveStatus::infeasible;
  if (s == "unknown") return SolveStatus::unknown;
  throw std::runtime_error("unknown solve status: " + s);
}

}  // namespace

void save_solution(const HflopInstance& instance, const SolveResult& result,
                   std::ostream& out) {
  json doc;
  doc["status"] = to_string(result.status);
  if (result.has_solution()) {
    const Solution& sol = *result.solution;
    doc["solver_kind"] = to_string(sol.kind);
    doc["assignment"] = json::array();
    for (int i = 0; i < instance.device_count(); ++i) {
      json entry{{"device", instance.topology.devices()[i].id}};
      if (sol.assignment[i]) {
        entry["edge"] = instance.topology.edges()[*sol.assignment[i]].id;
      } else {
        entry["edge"] = nullptr;
      }
      doc["assignment"].push_back(std::move(entry));
    }
    doc["placements"] = json::array();
    for (int j = 0; j < instance.edge_count(); ++j) {
      if (sol.placements[j]) {
        doc["placements"].push_back(instance.topology.edges()[j].id);
      }
    }
    doc["objective"] = sol.objective_value();
    doc["proven_optimal"] = sol.proven_optimal;
    doc["gap"] = sol.gap;
    doc["elapsed_ms"] = sol.stats.elapsed_ms;
    doc["nodes_explored"] = sol.stats.nodes_explored;
  }
  out << doc.dump(2) << "\n";
}

void save_solution_file(const HflopInstance& instance, const SolveResult& result,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write solution file: " + path);
  }
  save_solution(instance, result, out);
}

SolveResult load_solution(const HflopInstance& instance, std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("solution document is not valid JSON: ") +
                             e.what());
  }
  if (!doc.contains("status")) {
    throw std::runtime_error("$.status: missing field");
  }

  SolveResult result;
  result.status = status_from_string(doc.at("status").get<std::string>());
  if (!doc.contains("assignment")) {
    return result;
  }

  std::unordered_map<int, int> device_pos;
  for (int i = 0; i < instance.device_count(); ++i) {
    device_pos[instance.topology.devices()[i].id] = i;
  }
  std::unordered_map<int, int> edge_pos;
  for (int j = 0; j < instance.edge_count(); ++j) {
    edge_pos[instance.topology.edges()[j].id] = j;
  }

  std::vector<std::optional<int>> assignment(instance.device_count());
  const json& entries = doc.at("assignment");
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(instance.device_count())) {
    throw std::runtime_error("$.assignment: expected one entry per device");
  }
  for (const json& entry : entries) {
    const int device_id = entry.at("device").get<int>();
    auto dit = device_pos.find(device_id);
    if (dit == device_pos.end()) {
      throw std::runtime_error("$.assignment: unknown device id " +
                               std::to_string(device_id));
    }
    const json& edge = entry.at("edge");
    if (edge.is_null()) {
      assignment[dit->second] = std::nullopt;
      continue;
    }
    auto eit = edge_pos.find(edge.get<int>());
    if (eit == edge_pos.end()) {
      throw std::runtime_error("$.assignment: unknown edge id " +
                               std::to_string(edge.get<int>()));
    }
    assignment[dit->second] = eit->second;
  }

  Solution sol = Solution::from_assignment(
      instance, std::move(assignment),
      kind_from_string(doc.at("solver_kind").get<std::string>()));
  sol.proven_optimal = doc.value("proven_optimal", false);
  sol.gap = doc.value("gap", 1.0);
  sol.stats.elapsed_ms = doc.value("elapsed_ms", 0.0);
  sol.stats.nodes_explored = doc.value("nodes_explored", 0ULL);
  result.solution = std::move(sol);
  return result;
}

SolveResult load_solution_file(const HflopInstance& instance, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open solution file: " + path);
  }
  return load_solution(instance, in);
}

}  // namespace hflop
