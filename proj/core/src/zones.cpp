#include "catsp/zones.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "catsp/errors.hpp"

namespace catsp {

Instance impute_zones(const Instance& inst) {
  std::vector<int> labeled;
  for (std::size_t k = 0; k < inst.stops.size(); ++k) {
    if (inst.stops[k].zone_id) labeled.push_back(static_cast<int>(k + 1));
  }
  if (labeled.empty()) throw ImputationError("instance '" + inst.id + "' has no stop with a zone_id");
  if (labeled.size() == inst.stops.size()) return inst;

  Instance out = inst;
  for (std::size_t k = 0; k < inst.stops.size(); ++k) {
    if (inst.stops[k].zone_id) continue;
    const int target = static_cast<int>(k + 1);
    int best = labeled.front();
    double best_t = std::numeric_limits<double>::infinity();
    for (int src : labeled) {  // ascending, so strict < keeps the lower index on ties
      const double t = inst.time(src, target);
      if (t < best_t) {
        best_t = t;
        best = src;
      }
    }
    out.stops[k].zone_id = inst.node(best).zone_id;
  }
  return out;
}

ZoneIndex build_zone_index(const Instance& inst) {
  std::map<std::string, std::vector<int>> groups;
  for (std::size_t k = 0; k < inst.stops.size(); ++k) {
    const Stop& s = inst.stops[k];
    if (!s.zone_id) throw ImputationError("stop '" + s.id + "' has no zone; impute first");
    groups[*s.zone_id].push_back(static_cast<int>(k + 1));
  }
  ZoneIndex zi;
  zi.zone_of.assign(inst.node_count(), -1);
  for (auto& [label, nodes] : groups) {
    const int z = static_cast<int>(zi.zones.size());
    for (int v : nodes) zi.zone_of[v] = z;
    zi.zones.push_back(label);
    zi.members.push_back(std::move(nodes));
  }
  zi.centroid = centroids(inst, zi);
  return zi;
}

std::vector<LatLng> centroids(const Instance& inst, const ZoneIndex& zi) {
  std::vector<LatLng> out;
  out.reserve(zi.members.size());
  for (const auto& nodes : zi.members) {
    LatLng c;
    for (int v : nodes) {
      c.lat += inst.node(v).lat;
      c.lng += inst.node(v).lng;
    }
    const double k = static_cast<double>(nodes.size());
    out.push_back({c.lat / k, c.lng / k});
  }
  return out;
}

ZoneTimeMatrix zone_time_matrix(const Instance& inst, const ZoneIndex& zi) {
  const std::size_t m = zi.size();
  // Member lists with the depot appended as the single-stop zone m.
  std::vector<std::vector<int>> groups = zi.members;
  groups.push_back({0});
  SquareMatrix out(m + 1);
  for (std::size_t g = 0; g <= m; ++g) {
    for (std::size_t h = 0; h <= m; ++h) {
      if (g == h) continue;
      double sum = 0.0;
      for (int k : groups[g]) {
        for (int l : groups[h]) sum += inst.time(k, l);
      }
      out(g, h) = sum / static_cast<double>(groups[g].size() + groups[h].size());
    }
  }
  return ZoneTimeMatrix(std::move(out));
}

}  // namespace catsp
