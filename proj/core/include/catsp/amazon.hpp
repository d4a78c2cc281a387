#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "catsp/instance.hpp"

namespace catsp {

// A route of the Amazon Last Mile Routing Research Challenge layout.
struct AmazonRoute {
  std::string station;
  Instance instance;          // station is the depot; stops sorted by id
  std::vector<int> actual;    // executed order, closed
};

// Reads route_data.json, travel_times.json and actual_sequences.json from
// `dir`. Routes are returned sorted by route id; `limit` of 0 reads all.
// Stops whose zone_id is null or NaN are left unlabeled.
std::vector<AmazonRoute> load_amazon(const std::filesystem::path& dir, std::size_t limit = 0);

// Executed routes of the same station other than `self`, in route id order,
// at most `max_count`, as history records. Unlabeled stops are imputed first.
std::vector<HistoricalRoute> station_histories(const std::vector<AmazonRoute>& routes, std::size_t self,
                                               std::size_t max_count);

}  // namespace catsp
