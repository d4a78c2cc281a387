#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "catsp/geometry.hpp"
#include "catsp/instance.hpp"

namespace catsp {

enum class VisualMetric { adc, cdc, nc, be };

std::optional<VisualMetric> parse_visual_metric(std::string_view name);
std::string_view to_string(VisualMetric metric);

// Route-level visual attractiveness measures. adc is NaN when the route has
// fewer than two legs.
struct VisualReport {
  double adc = 0.0;  // ratio in (0, 1]
  double cdc = 0.0;  // seconds
  int nc = 0;
  double be = 0.0;  // radians per node
};

// Equirectangular projection at the instance's mean latitude.
Projection instance_projection(const Instance& inst);
std::vector<Vec2> project_route(const Instance& inst, std::span<const int> order);

// Mean leg time over the mean of the ceil(20%) longest legs. Legs are the
// arcs of `order` measured in travel time. Throws MetricError below 2 legs.
double avg_distance_compactness(const Instance& inst, std::span<const int> order);
double avg_distance_compactness(std::span<const double> legs);

// Sum over stops of the travel time to the stop at the median position
// floor((n+1)/2) of the visiting order (depot excluded).
double center_distance_compactness(const Instance& inst, std::span<const int> order);

// Number of unordered arc pairs whose projected segments properly intersect.
// Arcs sharing a node never count; touching or collinear overlap does not count.
// In the second overload points[k] is the position of nodes[k].
int crossing_count(const Instance& inst, std::span<const int> order);
int crossing_count(std::span<const Vec2> points, std::span<const int> nodes);

// Sum of unsigned turning angles at interior positions of `path`, divided by
// `node_count`.
double bending_energy(std::span<const Vec2> path, std::size_t node_count);
double bending_energy(const Instance& inst, std::span<const int> order);

VisualReport visual_report(const Instance& inst, std::span<const int> order);
double metric_value(const Instance& inst, std::span<const int> order, VisualMetric metric);

struct VisualWeights {
  double tau = 3.0;
  double lam = 5.0;
  double metric = 1.0;
};

// theta_tau * tau + theta_lam * lam + theta_k * value, except adc which is
// subtracted because larger adc means a more compact route.
double visual_objective(const Components& c, VisualMetric metric, double value,
                        const VisualWeights& w = {});

}  // namespace catsp
