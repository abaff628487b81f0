#include "hflop/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hflop {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

double number_at(const json& node, const std::string& path) {
  if (node.is_number()) {
    return node.get<double>();
  }
  if (node.is_string()) {
    try {
      std::size_t used = 0;
      const std::string text = node.get<std::string>();
      const double v = std::stod(text, &used);
      if (used == text.size()) {
        return v;
      }
    } catch (const std::exception&) {
    }
    fail(path, "string is not a decimal number");
  }
  fail(path, "expected a number or decimal string");
}

int int_at(const json& node, const std::string& path) {
  const double v = number_at(node, path);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) {
    fail(path, "expected an integer");
  }
  return i;
}

std::optional<Point2> coords_at(const json& obj, const std::string& path) {
  if (!obj.contains("coords")) {
    return std::nullopt;
  }
  const json& c = obj.at("coords");
  if (!c.is_array() || c.size() != 2) {
    fail(path + ".coords", "expected [x, y]");
  }
  return Point2{number_at(c[0], path + ".coords[0]"),
                number_at(c[1], path + ".coords[1]")};
}

const json& field(const json& obj, const char* name, const std::string& path) {
  if (!obj.is_object()) {
    fail(path, "expected an object");
  }
  auto it = obj.find(name);
  if (it == obj.end()) {
    fail(path + "." + name, "missing field");
  }
  return *it;
}

}  // namespace

HflopInstance load_instance(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("instance document is not valid JSON: ") +
                             e.what());
  }

  const json& jdevices = field(doc, "devices", "$");
  if (!jdevices.is_array() || jdevices.empty()) {
    fail("$.devices", "expected a non-empty array");
  }
  std::vector<Device> devices;
  devices.reserve(jdevices.size());
  for (std::size_t i = 0; i < jdevices.size(); ++i) {
    const std::string path = "$.devices[" + std::to_string(i) + "]";
    const json& jd = jdevices[i];
    Device d;
    d.id = int_at(field(jd, "id", path), path + ".id");
    d.lambda = number_at(field(jd, "lambda", path), path + ".lambda");
    d.coords = coords_at(jd, path);
    devices.push_back(d);
  }

  const json& jedges = field(doc, "edges", "$");
  if (!jedges.is_array() || jedges.empty()) {
    fail("$.edges", "expected a non-empty array");
  }
  std::vector<EdgeNode> edges;
  edges.reserve(jedges.size());
  for (std::size_t j = 0; j < jedges.size(); ++j) {
    const std::string path = "$.edges[" + std::to_string(j) + "]";
    const json& je = jedges[j];
    EdgeNode e;
    e.id = int_at(field(je, "id", path), path + ".id");
    const json& jcap = field(je, "capacity", path);
    if (jcap.is_string() && jcap.get<std::string>() == "inf") {
      e.capacity = Capacity::infinite();
    } else {
      e.capacity = Capacity::of(number_at(jcap, path + ".capacity"));
    }
    e.cloud_cost = number_at(field(je, "cloud_cost", path), path + ".cloud_cost");
    e.coords = coords_at(je, path);
    edges.push_back(e);
  }

  const json& jcost = field(doc, "device_edge_cost", "$");
  if (!jcost.is_array() || jcost.size() != devices.size()) {
    fail("$.device_edge_cost",
         "expected " + std::to_string(devices.size()) + " rows");
  }
  std::vector<double> cost;
  cost.reserve(devices.size() * edges.size());
  for (std::size_t i = 0; i < jcost.size(); ++i) {
    const std::string path = "$.device_edge_cost[" + std::to_string(i) + "]";
    const json& row = jcost[i];
    if (!row.is_array() || row.size() != edges.size()) {
      fail(path, "expected " + std::to_string(edges.size()) + " columns, got " +
                     std::to_string(row.is_array() ? row.size() : 0));
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      cost.push_back(number_at(row[j], path + "[" + std::to_string(j) + "]"));
    }
  }

  const int l = int_at(field(doc, "l", "$"), "$.l");
  const int t = int_at(field(doc, "T", "$"), "$.T");

  try {
    return HflopInstance(Topology(std::move(devices), std::move(edges), std::move(cost)),
                         l, t);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid instance: ") + e.what());
  }
}

HflopInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open instance file: " + path);
  }
  return load_instance(in);
}

void save_instance(const HflopInstance& instance, std::ostream& out) {
  json doc;
  const Topology& topo = instance.topology;

  doc["devices"] = json::array();
  for (const Device& d : topo.devices()) {
    json jd{{"id", d.id}, {"lambda", d.lambda}};
    if (d.coords) {
      jd["coords"] = {d.coords->x, d.coords->y};
    }
    doc["devices"].push_back(std::move(jd));
  }

  doc["edges"] = json::array();
  for (const EdgeNode& e : topo.edges()) {
    json je{{"id", e.id}, {"cloud_cost", e.cloud_cost}};
    if (e.capacity.is_infinite()) {
      je["capacity"] = "inf";
    } else {
      je["capacity"] = e.capacity.value();
    }
    if (e.coords) {
      je["coords"] = {e.coords->x, e.coords->y};
    }
    doc["edges"].push_back(std::move(je));
  }

  doc["device_edge_cost"] = json::array();
  for (int i = 0; i < topo.device_count(); ++i) {
    json row = json::array();
    for (int j = 0; j < topo.edge_count(); ++j) {
      row.push_back(topo.device_edge_cost(i, j));
    }
    doc["device_edge_cost"].push_back(std::move(row));
  }

  doc["l"] = instance.local_rounds_per_global;
  doc["T"] = instance.min_participation;

  out << doc.dump(2) << "\n";
}

void save_instance_file(const HflopInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write instance file: " + path);
  }
  save_instance(instance, out);
}

}  // namespace hflop
