#include "catsp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>

#include "catsp/errors.hpp"
#include "catsp/geometry.hpp"
#include "catsp/rng.hpp"

namespace catsp {

namespace {

constexpr double kBaseLat = 47.62;
constexpr double kBaseLng = -122.33;
constexpr double kRingBase = 1500.0;     // mean zone distance from the depot, meters
constexpr double kRingPerZone = 150.0;
constexpr double kRingBand = 2400.0;      // radial width of the zone band
constexpr double kRingSpan = std::numbers::pi;
constexpr double kDiskSpacing = 600.0;   // disk radius grows with sqrt(zones)
constexpr double kDiskDepotMin = 3000.0;
constexpr double kDiskDepotMax = 5000.0;
constexpr double kMinZoneGap = 500.0;
constexpr double kStopSpread = 120.0;    // std-dev of stops around a zone center
constexpr double kSwapProbability = 0.15;

enum Stream : std::uint64_t { geometry = 0, stops = 1, noise = 2, actual = 3, history = 100 };

struct Neighborhood {
  Vec2 depot;
  std::vector<Vec2> centers;
  bool clockwise = false;
};

std::string zone_label(int z) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "Z%03d", z);
  return buf;
}

std::vector<Vec2> place_zones(int n_zones, Rng& rng, const std::function<Vec2(Rng&)>& sample) {
  std::vector<Vec2> centers;
  double gap = kMinZoneGap;
  while (static_cast<int>(centers.size()) < n_zones) {
    bool placed = false;
    for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
      const Vec2 p = sample(rng);
      if (std::all_of(centers.begin(), centers.end(), [&](Vec2 q) { return distance(p, q) >= gap; })) {
        centers.push_back(p);
        placed = true;
      }
    }
    if (!placed) gap *= 0.8;
  }
  return centers;
}

Neighborhood make_neighborhood(std::uint64_t seed, int n_zones, SyntheticLayout layout) {
  Rng rng = Rng::stream(seed, Stream::geometry);
  Neighborhood nb;
  if (layout == SyntheticLayout::band) {
    const double r_mid = kRingBase + kRingPerZone * n_zones;
    const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
    nb.centers = place_zones(n_zones, rng, [&](Rng& r) {
      const double rad = r_mid + kRingBand * (r.uniform() - 0.5);
      const double a = heading + kRingSpan * (r.uniform() - 0.5);
      return Vec2{rad * std::cos(a), rad * std::sin(a)};
    });
    nb.depot = {0.0, 0.0};
  } else {
    const double radius = kDiskSpacing * std::sqrt(static_cast<double>(n_zones));
    nb.centers = place_zones(n_zones, rng, [&](Rng& r) {
      const double rad = radius * std::sqrt(r.uniform());
      const double a = r.uniform(0.0, 2.0 * std::numbers::pi);
      return Vec2{rad * std::cos(a), rad * std::sin(a)};
    });
    const double d = rng.uniform(kDiskDepotMin, kDiskDepotMax);
    const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    nb.depot = {d * std::cos(a), d * std::sin(a)};
  }
  nb.clockwise = rng.bernoulli(0.5);
  return nb;
}

// Stops for one day: stops_per_zone points per zone, zone-major.
std::vector<Vec2> draw_stops(const Neighborhood& nb, int stops_per_zone, Rng& rng) {
  std::vector<Vec2> pts;
  for (const Vec2& c : nb.centers) {
    for (int k = 0; k < stops_per_zone; ++k) {
      const double dx = kStopSpread * rng.normal();
      const double dy = kStopSpread * rng.normal();
      pts.push_back(c + Vec2{dx, dy});
    }
  }
  return pts;
}

std::vector<int> zone_order(const Neighborhood& nb, DriverPolicy policy, Rng& rng) {
  const int m = static_cast<int>(nb.centers.size());
  std::vector<int> zs(m);
  std::iota(zs.begin(), zs.end(), 0);
  if (policy == DriverPolicy::sweep) {
    Vec2 mid{};
    for (const Vec2& c : nb.centers) mid += c;
    const Vec2 ahead = mid * (1.0 / m) - nb.depot;
    std::vector<double> key(m);
    for (int z = 0; z < m; ++z) {
      const Vec2 v = nb.centers[z] - nb.depot;
      key[z] = std::atan2(cross(ahead, v), dot(ahead, v));
      if (nb.clockwise) key[z] = -key[z];
    }
    std::stable_sort(zs.begin(), zs.end(), [&](int a, int b) { return key[a] < key[b]; });
    for (int k = 0; k + 1 < m; ++k) {
      if (rng.bernoulli(kSwapProbability)) std::swap(zs[k], zs[k + 1]);
    }
    return zs;
  }
  std::vector<int> out;
  std::vector<char> used(m, 0);
  Vec2 at = nb.depot;
  for (int step = 0; step < m; ++step) {
    int next = -1;
    for (int z = 0; z < m; ++z) {
      if (!used[z] && (next < 0 || distance(at, nb.centers[z]) < distance(at, nb.centers[next]))) next = z;
    }
    used[next] = 1;
    out.push_back(next);
    at = nb.centers[next];
  }
  return out;
}

// Visits zones in `zs`, nearest remaining stop first within each zone.
// `cost(a, b)` is over node ids (0 depot, k+1 stop k).
template <typename Cost>
std::vector<int> drive(std::span<const int> zs, int stops_per_zone, Cost cost) {
  std::vector<int> order{0};
  for (int z : zs) {
    std::vector<int> left(stops_per_zone);
    std::iota(left.begin(), left.end(), z * stops_per_zone + 1);
    while (!left.empty()) {
      const int from = order.back();
      auto it = std::min_element(left.begin(), left.end(), [&](int a, int b) { return cost(from, a) < cost(from, b); });
      order.push_back(*it);
      left.erase(it);
    }
  }
  order.push_back(0);
  return order;
}

}  // namespace

DriverPolicy parse_policy(std::string_view tag) {
  if (tag == "sweep") return DriverPolicy::sweep;
  if (tag == "nearest") return DriverPolicy::nearest;
  throw ConfigError("unknown driver policy '" + std::string(tag) + "' (expected sweep or nearest)");
}

std::string_view to_string(DriverPolicy p) { return p == DriverPolicy::sweep ? "sweep" : "nearest"; }

SyntheticLayout parse_layout(std::string_view tag) {
  if (tag == "band") return SyntheticLayout::band;
  if (tag == "disk") return SyntheticLayout::disk;
  throw ConfigError("unknown layout '" + std::string(tag) + "' (expected band or disk)");
}

std::string_view to_string(SyntheticLayout l) { return l == SyntheticLayout::band ? "band" : "disk"; }

SyntheticCase generate_synthetic(std::uint64_t seed, int n_zones, int stops_per_zone, DriverPolicy policy,
                                 int n_histories, SyntheticLayout layout) {
  if (n_zones < 1) throw ConfigError("n_zones must be >= 1");
  if (stops_per_zone < 1) throw ConfigError("stops_per_zone must be >= 1");
  if (n_histories < 0) throw ConfigError("n_histories must be >= 0");

  const Neighborhood nb = make_neighborhood(seed, n_zones, layout);
  const Projection proj(kBaseLat);
  const Vec2 origin = proj.to_xy(kBaseLat, kBaseLng);
  auto to_stop = [&](std::string id, Vec2 p, std::optional<std::string> zone) {
    Stop s{std::move(id), 0.0, 0.0, std::move(zone)};
    proj.to_latlng(origin + p, s.lat, s.lng);
    return s;
  };

  SyntheticCase out;
  Instance& inst = out.instance;
  char name[96];
  std::snprintf(name, sizeof name, "syn-%s-%llu-%dx%d-%s", std::string(to_string(layout)).c_str(),
                static_cast<unsigned long long>(seed), n_zones, stops_per_zone, std::string(to_string(policy)).c_str());
  inst.id = name;
  inst.depot = to_stop("DEPOT", nb.depot, std::string(kDepotZone));

  Rng stop_rng = Rng::stream(seed, Stream::stops);
  const std::vector<Vec2> pts = draw_stops(nb, stops_per_zone, stop_rng);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    char id[16];
    std::snprintf(id, sizeof id, "S%04zu", k + 1);
    inst.stops.push_back(to_stop(id, pts[k], zone_label(static_cast<int>(k) / stops_per_zone)));
  }

  // Coordinates are re-read from the stored lat/lng so that the matrix agrees
  // with what a consumer of the instance file sees.
  std::vector<Vec2> nodes;
  nodes.push_back(proj.to_xy(inst.depot.lat, inst.depot.lng));
  for (const Stop& s : inst.stops) nodes.push_back(proj.to_xy(s.lat, s.lng));
  const std::size_t n = nodes.size();
  inst.travel_time = SquareMatrix(n);
  Rng noise = Rng::stream(seed, Stream::noise);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double factor = noise.uniform(1.0, kSyntheticNoiseMax);
      if (i != j) inst.travel_time(i, j) = distance(nodes[i], nodes[j]) / kSyntheticSpeed * factor;
    }
  }

  Rng actual_rng = Rng::stream(seed, Stream::actual);
  const std::vector<int> zs = zone_order(nb, policy, actual_rng);
  out.actual = drive(zs, stops_per_zone, [&](int a, int b) { return inst.travel_time(a, b); });

  for (int h = 0; h < n_histories; ++h) {
    Rng rng = Rng::stream(seed, Stream::history + static_cast<std::uint64_t>(h));
    std::vector<Vec2> day = draw_stops(nb, stops_per_zone, rng);
    day.insert(day.begin(), nb.depot);
    const std::vector<int> hz = zone_order(nb, policy, rng);
    const std::vector<int> route =
        drive(hz, stops_per_zone, [&](int a, int b) { return distance(day[a], day[b]); });
    HistoricalRoute hr;
    for (std::size_t k = 0; k + 1 < route.size(); ++k) {
      const int v = route[k];
      const Stop s = to_stop("", day[v], v == 0 ? std::string(kDepotZone) : zone_label((v - 1) / stops_per_zone));
      hr.sequence.push_back({s.lat, s.lng, *s.zone_id});
    }
    out.histories.push_back(std::move(hr));
  }
  return out;
}

SyntheticCase generate_synthetic(std::uint64_t seed, int n_zones, int stops_per_zone, std::string_view policy,
                                 int n_histories, SyntheticLayout layout) {
  return generate_synthetic(seed, n_zones, stops_per_zone, parse_policy(policy), n_histories, layout);
}

}  // namespace catsp
