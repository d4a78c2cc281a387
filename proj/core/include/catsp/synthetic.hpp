#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "catsp/instance.hpp"

namespace catsp {

inline constexpr double kSyntheticSpeed = 8.0;         // meters per second
inline constexpr double kSyntheticNoiseMax = 1.2;      // travel-time multiplier in [1, 1.2]
inline constexpr int kSyntheticHistories = 30;

// How the simulated driver orders zones.
//   sweep:   by angle around the depot, one rotation direction per
//            neighborhood, adjacent zones swapped with probability 0.15
//   nearest: greedy nearest zone centroid
// Within a zone the driver always goes to the nearest remaining stop.
enum class DriverPolicy { sweep, nearest };

DriverPolicy parse_policy(std::string_view tag);  // throws ConfigError
std::string_view to_string(DriverPolicy p);

// Where zones sit relative to the depot.
//   band: half annulus around the depot, 2.4 km deep. An angular sweep is
//         close to time-efficient but zigzags across the band depth.
//   disk: compact disk 3-5 km from the depot. An angular sweep zigzags a lot.
enum class SyntheticLayout { band, disk };

SyntheticLayout parse_layout(std::string_view tag);  // throws ConfigError
std::string_view to_string(SyntheticLayout l);

struct SyntheticCase {
  Instance instance;
  std::vector<HistoricalRoute> histories;  // past days in the same neighborhood
  std::vector<int> actual;                 // held-out executed route on `instance`, closed
};

// Stops are Gaussian clusters around zone centers; travel time is Euclidean
// distance over kSyntheticSpeed times a per-arc multiplier. Histories reuse
// the zone centers with freshly drawn stops.
SyntheticCase generate_synthetic(std::uint64_t seed, int n_zones, int stops_per_zone, DriverPolicy policy,
                                 int n_histories = kSyntheticHistories,
                                 SyntheticLayout layout = SyntheticLayout::band);
SyntheticCase generate_synthetic(std::uint64_t seed, int n_zones, int stops_per_zone, std::string_view policy,
                                 int n_histories = kSyntheticHistories,
                                 SyntheticLayout layout = SyntheticLayout::band);

}  // namespace catsp
