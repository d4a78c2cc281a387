#include "catsp/amazon.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "catsp/errors.hpp"
#include "catsp/zones.hpp"

namespace catsp {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw SchemaError(path.filename().string(), e.what());
  }
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + "." + key, "missing");
  return *it;
}

}  // namespace

std::vector<AmazonRoute> load_amazon(const std::filesystem::path& dir, std::size_t limit) {
  const json routes = read_json(dir / "route_data.json");
  const json times = read_json(dir / "travel_times.json");
  const json actual = read_json(dir / "actual_sequences.json");

  std::vector<std::string> ids;
  for (auto it = routes.begin(); it != routes.end(); ++it) ids.push_back(it.key());
  std::sort(ids.begin(), ids.end());
  if (limit > 0 && ids.size() > limit) ids.resize(limit);

  std::vector<AmazonRoute> out;
  for (const std::string& rid : ids) {
    const json& r = routes.at(rid);
    const json& stops = member(r, "stops", rid);
    AmazonRoute ar;
    ar.station = r.value("station_code", "");
    ar.instance.id = rid;

    std::vector<std::string> order_ids;  // node order: depot first
    std::string depot_id;
    std::vector<std::string> customer_ids;
    for (auto it = stops.begin(); it != stops.end(); ++it) {
      if (it.value().value("type", "") == "Station") depot_id = it.key();
      else customer_ids.push_back(it.key());
    }
    if (depot_id.empty()) throw SchemaError(rid + ".stops", "no Station stop");
    std::sort(customer_ids.begin(), customer_ids.end());
    order_ids.push_back(depot_id);
    order_ids.insert(order_ids.end(), customer_ids.begin(), customer_ids.end());

    auto make_stop = [&](const std::string& sid) {
      const json& s = stops.at(sid);
      Stop st{sid, s.at("lat").get<double>(), s.at("lng").get<double>(), std::nullopt};
      const auto z = s.find("zone_id");
      if (z != s.end() && z->is_string()) st.zone_id = z->get<std::string>();
      return st;
    };
    ar.instance.depot = make_stop(depot_id);
    ar.instance.depot.zone_id = std::string(kDepotZone);
    for (const std::string& sid : customer_ids) ar.instance.stops.push_back(make_stop(sid));
    // Some challenge stops share a zone label spelled "nan"; treat as missing.
    for (Stop& s : ar.instance.stops) {
      if (s.zone_id && (*s.zone_id == "nan" || s.zone_id->empty())) s.zone_id.reset();
    }

    const json& tt = member(times, rid, "travel_times");
    const std::size_t n = order_ids.size();
    ar.instance.travel_time = SquareMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = member(tt, order_ids[i], rid);
      for (std::size_t j = 0; j < n; ++j) {
        ar.instance.travel_time(i, j) = i == j ? 0.0 : member(row, order_ids[j], rid + "." + order_ids[i]).get<double>();
      }
    }

    const json& seq = member(member(actual, rid, "actual_sequences"), "actual", rid);
    std::vector<int> order(n, -1);
    for (std::size_t v = 0; v < n; ++v) {
      const int pos = member(seq, order_ids[v], rid + ".actual").get<int>();
      if (pos < 0 || static_cast<std::size_t>(pos) >= n || order[pos] != -1) {
        throw SchemaError(rid + ".actual." + order_ids[v], "bad sequence position");
      }
      order[pos] = static_cast<int>(v);
    }
    if (order[0] != 0) throw SchemaError(rid + ".actual", "sequence does not start at the station");
    order.push_back(0);
    ar.actual = std::move(order);
    validate_instance(ar.instance);
    out.push_back(std::move(ar));
  }
  return out;
}

std::vector<HistoricalRoute> station_histories(const std::vector<AmazonRoute>& routes, std::size_t self,
                                               std::size_t max_count) {
  std::vector<HistoricalRoute> out;
  for (std::size_t k = 0; k < routes.size() && out.size() < max_count; ++k) {
    if (k == self || routes[k].station != routes[self].station) continue;
    HistoricalRoute h = to_history(impute_zones(routes[k].instance), routes[k].actual);
    h.instance_ref = routes[k].instance.id;
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace catsp
