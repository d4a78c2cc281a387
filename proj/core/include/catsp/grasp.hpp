#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catsp/instance.hpp"
#include "catsp/matrix.hpp"
#include "catsp/objective.hpp"
#include "catsp/visual.hpp"

namespace catsp {

inline constexpr int kDefaultIterations = 50;

struct Mode {
  enum class Kind { base, dm, visual };
  Kind kind = Kind::base;
  VisualMetric metric = VisualMetric::nc;  // only for Kind::visual

  static Mode base() { return {Kind::base, VisualMetric::nc}; }
  static Mode dm() { return {Kind::dm, VisualMetric::nc}; }
  static Mode visual(VisualMetric m) { return {Kind::visual, m}; }

  // "base", "dm", "visual:adc" ... Throws ConfigError otherwise.
  static Mode parse(std::string_view text);
  std::string name() const;
  Weights default_weights() const;
};

struct SearchConfig {
  int iterations = kDefaultIterations;
  std::uint64_t seed = 1;
  Mode mode;
  Weights weights = Weights::base();
  double visual_weight = 1.0;
  std::optional<double> epsilon;  // upper bound on f2, used by roh()
};

// Zone-level cost used by relocate_zones. Keys compare lexicographically:
// constraint violation first, then cost.
struct ZoneKey {
  double violation = 0.0;
  double cost = 0.0;
};
using ZoneEvaluator = std::function<ZoneKey(std::span<const int> zseq)>;

// Travel-time cost of a customer-zone sequence with depot legs, from M.
ZoneEvaluator zone_time_evaluator(const ZoneTimeMatrix& M);
// Per transition: theta4 M/max(M) + (theta2 (1 - H) + theta3 A) / m.
ZoneEvaluator zone_history_evaluator(const RouteContext& ctx, const Weights& w);
// Violation max(0, f2 - c) with f2 as in zone_f2, cost from M.
ZoneEvaluator zone_constrained_evaluator(const RouteContext& ctx, const Weights& w, double c);

// First-improvement relocation of single zones. `zseq` lists customer zones
// only; the depot is fixed at both ends.
std::vector<int> relocate_zones(std::vector<int> zseq, const ZoneEvaluator& eval);

// Variable neighborhood descent over same-zone moves (relocate stop, then
// swap stops), best improvement per neighborhood, restarting from the first
// neighborhood after every improvement. `cost` is the arc cost matrix and
// `zone_of` the zone of every node (depot -1).
std::vector<int> vnd(const SquareMatrix& cost, std::vector<int> order, std::span<const int> zone_of);

// Best of `cfg.iterations` GRASP iterations under the mode's objective.
RouteSolution solve(const Instance& inst, const RouteContext& ctx, const SearchConfig& cfg);

// Route optimization heuristic: minimizes f1 (seconds) subject to f2 <= c
// (f2 weighted by cfg.weights). Returns nullopt when no iteration is feasible.
std::optional<RouteSolution> roh(const Instance& inst, const RouteContext& ctx, const SearchConfig& cfg,
                                 double c);

// Tour built greedily: zones by nearest M from a random first zone, stops by
// nearest travel time. Used as an f1 upper bound.
RouteSolution nearest_neighbor_route(const Instance& inst, const RouteContext& ctx, std::uint64_t seed);

}  // namespace catsp
