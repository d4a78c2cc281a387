#pragma once

#include <string>
#include <vector>

#include "catsp/instance.hpp"
#include "catsp/matrix.hpp"

namespace catsp {

struct LatLng {
  double lat = 0.0;
  double lng = 0.0;
};

// Customer zones of an imputed instance. Zones are numbered 0..m-1 in
// lexicographic label order, so the numbering does not depend on stop order.
struct ZoneIndex {
  std::vector<std::string> zones;
  std::vector<std::vector<int>> members;  // node indices per zone, ascending
  std::vector<int> zone_of;               // per node; depot is -1
  std::vector<LatLng> centroid;

  std::size_t size() const { return zones.size(); }
};

// Zone-to-zone travel-time matrix over m customer zones plus the depot, which
// is treated as a one-stop zone with index m.
class ZoneTimeMatrix {
 public:
  ZoneTimeMatrix() = default;
  explicit ZoneTimeMatrix(SquareMatrix m) : m_(std::move(m)) {}

  std::size_t zone_count() const { return m_.dim() == 0 ? 0 : m_.dim() - 1; }
  int depot() const { return static_cast<int>(zone_count()); }
  double operator()(int from, int to) const { return m_(from, to); }
  double max() const { return m_.max(); }
  const SquareMatrix& matrix() const { return m_; }

 private:
  SquareMatrix m_;
};

// Gives every unlabeled stop the zone of the labeled stop with the smallest
// travel time from that labeled stop to it; ties go to the lower stop index.
// Throws ImputationError when no stop is labeled.
Instance impute_zones(const Instance& inst);

// Requires every stop to carry a zone (see impute_zones).
ZoneIndex build_zone_index(const Instance& inst);

// Arithmetic mean of member coordinates per zone.
std::vector<LatLng> centroids(const Instance& inst, const ZoneIndex& zi);

// M(i, j) = sum_{k in N_i} sum_{l in N_j} t(k, l) / (|N_i| + |N_j|), M(i, i) = 0.
ZoneTimeMatrix zone_time_matrix(const Instance& inst, const ZoneIndex& zi);

}  // namespace catsp
