#pragma once

#include <iosfwd>
#include <string>

#include "hflop/topology.hpp"

namespace hflop {

// Instance documents are JSON trees:
//   {
//     "devices": [ {"id": 0, "lambda": 1.5, "coords": [x, y]?}, ... ],
//     "edges":   [ {"id": 0, "capacity": 12.0 | "inf", "cloud_cost": 1.0,
//                   "coords": [x, y]?}, ... ],
//     "device_edge_cost": [ [ ... m columns ... ] x n rows ],
//     "l": 2,
//     "T": 20
//   }
// Numbers may be written as numerics or as decimal strings. Schema
// violations are reported with the offending field path.
HflopInstance load_instance(std::istream& in);
HflopInstance load_instance_file(const std::string& path);

void save_instance(const HflopInstance& instance, std::ostream& out);
void save_instance_file(const HflopInstance& instance, const std::string& path);

}  // namespace hflop
