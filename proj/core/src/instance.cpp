#include "catsp/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "catsp/errors.hpp"

namespace catsp {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing field");
  return *it;
}

double require_number(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw SchemaError(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

void check_coordinates(double lat, double lng, const std::string& path) {
  if (!std::isfinite(lat) || lat < -90.0 || lat > 90.0) {
    throw SchemaError(path + ".lat", "latitude out of [-90, 90]");
  }
  if (!std::isfinite(lng) || lng < -180.0 || lng > 180.0) {
    throw SchemaError(path + ".lng", "longitude out of [-180, 180]");
  }
}

Stop parse_stop(const json& j, const std::string& path, bool allow_zone) {
  Stop s;
  s.id = require_string(j, "id", path);
  s.lat = require_number(j, "lat", path);
  s.lng = require_number(j, "lng", path);
  check_coordinates(s.lat, s.lng, path);
  if (allow_zone) {
    auto it = j.find("zone_id");
    if (it != j.end() && !it->is_null()) {
      if (!it->is_string()) throw SchemaError(path + ".zone_id", "expected a string");
      s.zone_id = it->get<std::string>();
    }
  }
  return s;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(what, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

void validate_instance(const Instance& inst) {
  const std::size_t n = inst.node_count();
  if (inst.travel_time.dim() != n) {
    throw DimensionError("travel_time is " + std::to_string(inst.travel_time.dim()) + "x" +
                         std::to_string(inst.travel_time.dim()) + " but " +
                         std::to_string(inst.stop_count()) + " stops need " + std::to_string(n) +
                         "x" + std::to_string(n));
  }
  check_coordinates(inst.depot.lat, inst.depot.lng, "depot");
  std::unordered_set<std::string> ids{inst.depot.id};
  bool any_zone = false;
  for (std::size_t k = 0; k < inst.stops.size(); ++k) {
    const Stop& s = inst.stops[k];
    const std::string path = "stops[" + std::to_string(k) + "]";
    check_coordinates(s.lat, s.lng, path);
    if (!ids.insert(s.id).second) throw SchemaError(path + ".id", "duplicate id '" + s.id + "'");
    if (s.zone_id) {
      if (*s.zone_id == kDepotZone) throw SchemaError(path + ".zone_id", "reserved depot label");
      any_zone = true;
    }
  }
  if (!inst.stops.empty() && !any_zone) throw SchemaError("stops", "no stop carries a zone_id");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double t = inst.travel_time(i, j);
      if (!std::isfinite(t) || t < 0.0) {
        throw SchemaError("travel_time", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                             ") must be finite and >= 0");
      }
    }
    if (inst.travel_time(i, i) != 0.0) {
      throw SchemaError("travel_time", "diagonal entry " + std::to_string(i) + " must be 0");
    }
  }
}

double route_time(const Instance& inst, std::span<const int> order) {
  double total = 0.0;
  for (std::size_t k = 1; k < order.size(); ++k) total += inst.time(order[k - 1], order[k]);
  return total;
}

bool zones_contiguous(std::span<const std::string> labels) {
  std::unordered_set<std::string_view> closed;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (k > 0 && labels[k] == labels[k - 1]) continue;
    if (k > 0) closed.insert(labels[k - 1]);
    if (closed.contains(labels[k])) return false;
  }
  return true;
}

bool validate_solution(const Instance& inst, std::span<const int> order) {
  const std::size_t n = inst.stop_count();
  if (order.size() != n + 2) return false;
  if (order.front() != 0 || order.back() != 0) return false;
  std::vector<char> seen(n + 1, 0);
  for (std::size_t k = 1; k + 1 < order.size(); ++k) {
    const int v = order[k];
    if (v <= 0 || static_cast<std::size_t>(v) > n || seen[v]) return false;
    seen[v] = 1;
  }
  // Unlabeled stops get a label unique to themselves so they never conflict.
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t k = 1; k + 1 < order.size(); ++k) {
    const Stop& s = inst.node(order[k]);
    labels.push_back(s.zone_id ? *s.zone_id : std::string(kDepotZone) + "#" + s.id);
  }
  return zones_contiguous(labels);
}

Instance parse_instance(std::string_view json_text) {
  const json j = parse_json(json_text, "instance");
  Instance inst;
  inst.id = require_string(j, "id", "instance");
  inst.depot = parse_stop(require(j, "depot", "instance"), "depot", false);
  inst.depot.zone_id = std::string(kDepotZone);
  const json& stops = require(j, "stops", "instance");
  if (!stops.is_array()) throw SchemaError("stops", "expected an array");
  for (std::size_t k = 0; k < stops.size(); ++k) {
    inst.stops.push_back(parse_stop(stops[k], "stops[" + std::to_string(k) + "]", true));
  }
  const json& tt = require(j, "travel_time", "instance");
  if (!tt.is_array()) throw SchemaError("travel_time", "expected an array of arrays");
  const std::size_t dim = tt.size();
  if (dim != inst.node_count()) {
    throw DimensionError("travel_time has " + std::to_string(dim) + " rows but " +
                         std::to_string(inst.stop_count()) + " stops need " +
                         std::to_string(inst.node_count()));
  }
  inst.travel_time = SquareMatrix(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = tt[r];
    if (!row.is_array()) throw SchemaError("travel_time[" + std::to_string(r) + "]", "expected an array");
    if (row.size() != dim) {
      throw DimensionError("travel_time row " + std::to_string(r) + " has " +
                           std::to_string(row.size()) + " entries, expected " + std::to_string(dim));
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!row[c].is_number()) {
        throw SchemaError("travel_time[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                          "expected a number");
      }
      inst.travel_time(r, c) = row[c].get<double>();
    }
  }
  validate_instance(inst);
  return inst;
}

std::string dump_instance(const Instance& inst) {
  ordered_json j;
  j["id"] = inst.id;
  j["depot"] = {{"id", inst.depot.id}, {"lat", inst.depot.lat}, {"lng", inst.depot.lng}};
  ordered_json stops = ordered_json::array();
  for (const Stop& s : inst.stops) {
    ordered_json o = {{"id", s.id}, {"lat", s.lat}, {"lng", s.lng}};
    if (s.zone_id) o["zone_id"] = *s.zone_id;
    stops.push_back(std::move(o));
  }
  j["stops"] = std::move(stops);
  ordered_json tt = ordered_json::array();
  for (std::size_t r = 0; r < inst.travel_time.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (double v : inst.travel_time.row(r)) row.push_back(v);
    tt.push_back(std::move(row));
  }
  j["travel_time"] = std::move(tt);
  return j.dump() + "\n";
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, dump_instance(inst));
}

std::vector<HistoricalRoute> parse_histories(std::string_view json_text) {
  const json j = parse_json(json_text, "histories");
  if (!j.is_array()) throw SchemaError("histories", "expected an array");
  std::vector<HistoricalRoute> out;
  out.reserve(j.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string path = "histories[" + std::to_string(r) + "]";
    HistoricalRoute h;
    if (auto it = j[r].find("instance_ref"); j[r].is_object() && it != j[r].end() && it->is_string()) {
      h.instance_ref = it->get<std::string>();
    }
    const json& seq = require(j[r], "sequence", path);
    if (!seq.is_array()) throw SchemaError(path + ".sequence", "expected an array");
    for (std::size_t k = 0; k < seq.size(); ++k) {
      const std::string p = path + ".sequence[" + std::to_string(k) + "]";
      HistoryPoint pt;
      pt.lat = require_number(seq[k], "lat", p);
      pt.lng = require_number(seq[k], "lng", p);
      check_coordinates(pt.lat, pt.lng, p);
      pt.zone_id = require_string(seq[k], "zone_id", p);
      h.sequence.push_back(std::move(pt));
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::string dump_histories(std::span<const HistoricalRoute> histories) {
  ordered_json arr = ordered_json::array();
  for (const HistoricalRoute& h : histories) {
    ordered_json o;
    if (h.instance_ref) o["instance_ref"] = *h.instance_ref;
    ordered_json seq = ordered_json::array();
    for (const HistoryPoint& p : h.sequence) {
      seq.push_back({{"lat", p.lat}, {"lng", p.lng}, {"zone_id", p.zone_id}});
    }
    o["sequence"] = std::move(seq);
    arr.push_back(std::move(o));
  }
  return arr.dump() + "\n";
}

std::vector<HistoricalRoute> load_histories(const std::filesystem::path& path) {
  return parse_histories(read_text_file(path));
}

void save_histories(std::span<const HistoricalRoute> histories, const std::filesystem::path& path) {
  write_text_file(path, dump_histories(histories));
}

std::vector<int> parse_route(const Instance& inst, std::string_view json_text) {
  const json j = parse_json(json_text, "route");
  const json& ids = require(j, "order", "route");
  if (!ids.is_array()) throw SchemaError("route.order", "expected an array");
  std::unordered_map<std::string, int> index;
  for (std::size_t v = 0; v < inst.node_count(); ++v) index.emplace(inst.node(v).id, static_cast<int>(v));
  std::vector<int> order;
  order.reserve(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!ids[k].is_string()) throw SchemaError("route.order[" + std::to_string(k) + "]", "expected a string");
    auto it = index.find(ids[k].get<std::string>());
    if (it == index.end()) {
      throw SchemaError("route.order[" + std::to_string(k) + "]",
                        "unknown stop id '" + ids[k].get<std::string>() + "'");
    }
    order.push_back(it->second);
  }
  return order;
}

std::string dump_route(const Instance& inst, std::span<const int> order) {
  ordered_json j;
  j["instance_id"] = inst.id;
  ordered_json ids = ordered_json::array();
  for (int v : order) ids.push_back(inst.node(v).id);
  j["order"] = std::move(ids);
  return j.dump() + "\n";
}

std::vector<int> load_route(const Instance& inst, const std::filesystem::path& path) {
  return parse_route(inst, read_text_file(path));
}

void save_route(const Instance& inst, std::span<const int> order, const std::filesystem::path& path) {
  write_text_file(path, dump_route(inst, order));
}

HistoricalRoute to_history(const Instance& inst, std::span<const int> order) {
  HistoricalRoute h;
  h.instance_ref = inst.id;
  const std::size_t len = (order.size() > 1 && order.back() == 0) ? order.size() - 1 : order.size();
  for (std::size_t k = 0; k < len; ++k) {
    const Stop& s = inst.node(order[k]);
    h.sequence.push_back({s.lat, s.lng, s.zone_id.value_or(std::string(kDepotZone))});
  }
  return h;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace catsp
