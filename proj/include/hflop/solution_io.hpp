#pragma once

#include <iosfwd>
#include <string>

#include "hflop/solver.hpp"

namespace hflop {

// Solution documents are JSON trees:
//   {
//     "status": "optimal" | "feasible" | "infeasible" | "unknown",
//     "solver_kind": "...",
//     "assignment": [ {"device": <id>, "edge": <id> | null}, ... ],
//     "placements": [ <edge id>, ... ],        // placed edges only
//     "objective": <number>,
//     "proven_optimal": <bool>,
//     "gap": <number>,
//     "elapsed_ms": <number>,
//     "nodes_explored": <number>
//   }
// Infeasible/unknown results carry only the status. Device and edge ids are
// the instance's ids; loading resolves them and validates against the
// instance.
void save_solution(const HflopInstance& instance, const SolveResult& result,
                   std::ostream& out);
void save_solution_file(const HflopInstance& instance, const SolveResult& result,
                        const std::string& path);

SolveResult load_solution(const HflopInstance& instance, std::istream& in);
SolveResult load_solution_file(const HflopInstance& instance, const std::string& path);

}  // namespace hflop
