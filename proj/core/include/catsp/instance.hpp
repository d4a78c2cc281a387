#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catsp/matrix.hpp"

namespace catsp {

// Zone label reserved for the depot; never carried by a customer stop.
inline constexpr std::string_view kDepotZone = "__DEPOT__";

struct Stop {
  std::string id;
  double lat = 0.0;
  double lng = 0.0;
  std::optional<std::string> zone_id;  // nullopt: missing zone ID

  friend bool operator==(const Stop&, const Stop&) = default;
};

// Node indexing used throughout the library: node 0 is the depot and stop k
// (0-based position in `stops`) is node k + 1. `travel_time` is indexed by
// node and is not assumed symmetric.
struct Instance {
  std::string id;
  Stop depot;
  std::vector<Stop> stops;
  SquareMatrix travel_time;

  std::size_t stop_count() const { return stops.size(); }
  std::size_t node_count() const { return stops.size() + 1; }
  const Stop& node(std::size_t v) const { return v == 0 ? depot : stops[v - 1]; }
  double time(std::size_t from, std::size_t to) const { return travel_time(from, to); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct HistoryPoint {
  double lat = 0.0;
  double lng = 0.0;
  std::string zone_id;

  friend bool operator==(const HistoryPoint&, const HistoryPoint&) = default;
};

// An executed route, depot first.
struct HistoricalRoute {
  std::optional<std::string> instance_ref;
  std::vector<HistoryPoint> sequence;

  friend bool operator==(const HistoricalRoute&, const HistoricalRoute&) = default;
};

// Objective components cached on a solution. All dimensionless.
struct Components {
  double tau = 0.0;
  double eta = 0.0;
  double phi = 0.0;
  double lam = 0.0;
};

// A closed tour: order[0] == order.back() == 0 (depot), every stop node once.
struct RouteSolution {
  std::vector<int> order;
  double total_time = 0.0;  // seconds, including depot arcs
  Components components;
  double objective = std::numeric_limits<double>::infinity();
  double f1 = 0.0;
  double f2 = 0.0;
};

// Throws SchemaError / DimensionError when `inst` breaks a data-model invariant.
void validate_instance(const Instance& inst);

// Sum of arc times along `order`.
double route_time(const Instance& inst, std::span<const int> order);

// True iff `order` is a closed tour over all stops with contiguous zones.
// Stops without a zone label are unconstrained.
bool validate_solution(const Instance& inst, std::span<const int> order);
inline bool validate_solution(const Instance& inst, const RouteSolution& sol) {
  return validate_solution(inst, sol.order);
}

// True iff consecutive equal zone labels form contiguous blocks.
bool zones_contiguous(std::span<const std::string> labels);

// --- JSON file formats -------------------------------------------------------

Instance load_instance(const std::filesystem::path& path);
Instance parse_instance(std::string_view json_text);
void save_instance(const Instance& inst, const std::filesystem::path& path);
std::string dump_instance(const Instance& inst);

std::vector<HistoricalRoute> load_histories(const std::filesystem::path& path);
std::vector<HistoricalRoute> parse_histories(std::string_view json_text);
void save_histories(std::span<const HistoricalRoute> histories, const std::filesystem::path& path);
std::string dump_histories(std::span<const HistoricalRoute> histories);

// Route files: {"instance_id": ..., "order": [stop ids, depot first and last]}.
std::vector<int> load_route(const Instance& inst, const std::filesystem::path& path);
std::vector<int> parse_route(const Instance& inst, std::string_view json_text);
void save_route(const Instance& inst, std::span<const int> order, const std::filesystem::path& path);
std::string dump_route(const Instance& inst, std::span<const int> order);

// Executed route expressed as a HistoricalRoute (depot first, no closing depot).
HistoricalRoute to_history(const Instance& inst, std::span<const int> order);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace catsp
