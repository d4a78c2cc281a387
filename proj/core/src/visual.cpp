#include "catsp/visual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "catsp/errors.hpp"

namespace catsp {

std::optional<VisualMetric> parse_visual_metric(std::string_view name) {
  if (name == "adc") return VisualMetric::adc;
  if (name == "cdc") return VisualMetric::cdc;
  if (name == "nc") return VisualMetric::nc;
  if (name == "be") return VisualMetric::be;
  return std::nullopt;
}

std::string_view to_string(VisualMetric metric) {
  switch (metric) {
    case VisualMetric::adc: return "adc";
    case VisualMetric::cdc: return "cdc";
    case VisualMetric::nc: return "nc";
    case VisualMetric::be: return "be";
  }
  return "?";
}

Projection instance_projection(const Instance& inst) {
  double lat = inst.depot.lat;
  for (const Stop& s : inst.stops) lat += s.lat;
  return Projection(lat / static_cast<double>(inst.node_count()));
}

std::vector<Vec2> project_route(const Instance& inst, std::span<const int> order) {
  const Projection proj = instance_projection(inst);
  std::vector<Vec2> pts;
  pts.reserve(order.size());
  for (int v : order) pts.push_back(proj.to_xy(inst.node(v).lat, inst.node(v).lng));
  return pts;
}

double avg_distance_compactness(std::span<const double> legs) {
  if (legs.size() < 2) throw MetricError("average distance compactness needs at least 2 legs");
  std::vector<double> sorted(legs.begin(), legs.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t top = std::max<std::size_t>(1, (sorted.size() + 4) / 5);
  double all = 0.0;
  for (double v : sorted) all += v;
  double longest = 0.0;
  for (std::size_t k = 0; k < top; ++k) longest += sorted[k];
  const double avg = all / static_cast<double>(sorted.size());
  const double avg_max = longest / static_cast<double>(top);
  if (avg_max == 0.0) return 1.0;  // every leg has zero length
  return avg / avg_max;
}

double avg_distance_compactness(const Instance& inst, std::span<const int> order) {
  std::vector<double> legs;
  for (std::size_t k = 1; k < order.size(); ++k) legs.push_back(inst.time(order[k - 1], order[k]));
  return avg_distance_compactness(legs);
}

double center_distance_compactness(const Instance& inst, std::span<const int> order) {
  std::vector<int> stops;
  for (int v : order) {
    if (v != 0) stops.push_back(v);
  }
  if (stops.empty()) return 0.0;
  const int center = stops[(stops.size() + 1) / 2 - 1];
  double sum = 0.0;
  for (int v : stops) sum += inst.time(v, center);
  return sum;
}

namespace {

int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool boxes_overlap(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  return std::max(a.x, b.x) >= std::min(c.x, d.x) && std::max(c.x, d.x) >= std::min(a.x, b.x) &&
         std::max(a.y, b.y) >= std::min(c.y, d.y) && std::max(c.y, d.y) >= std::min(a.y, b.y);
}

bool properly_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  if (!boxes_overlap(a, b, c, d)) return false;
  const int o1 = orientation_sign(a, b, c);
  const int o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a);
  const int o4 = orientation_sign(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

}  // namespace

int crossing_count(std::span<const Vec2> points, std::span<const int> nodes) {
  const std::size_t arcs = points.size() < 2 ? 0 : points.size() - 1;
  int count = 0;
  for (std::size_t i = 0; i < arcs; ++i) {
    for (std::size_t j = i + 1; j < arcs; ++j) {
      if (nodes[i] == nodes[j] || nodes[i] == nodes[j + 1] || nodes[i + 1] == nodes[j] ||
          nodes[i + 1] == nodes[j + 1]) {
        continue;
      }
      if (properly_intersect(points[i], points[i + 1], points[j], points[j + 1])) ++count;
    }
  }
  return count;
}

int crossing_count(const Instance& inst, std::span<const int> order) {
  const std::vector<Vec2> pts = project_route(inst, order);
  return crossing_count(pts, order);
}

double bending_energy(std::span<const Vec2> path, std::size_t node_count) {
  if (node_count == 0 || path.size() < 3) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 2; i < path.size(); ++i) {
    sum += angle_between(path[i - 1] - path[i - 2], path[i] - path[i - 1]);
  }
  return sum / static_cast<double>(node_count);
}

double bending_energy(const Instance& inst, std::span<const int> order) {
  const std::vector<Vec2> pts = project_route(inst, order);
  const std::size_t nodes = (order.size() > 1 && order.front() == order.back()) ? order.size() - 1
                                                                              : order.size();
  return bending_energy(pts, nodes);
}

VisualReport visual_report(const Instance& inst, std::span<const int> order) {
  VisualReport r;
  r.adc = order.size() >= 3 ? avg_distance_compactness(inst, order)
                            : std::numeric_limits<double>::quiet_NaN();
  r.cdc = center_distance_compactness(inst, order);
  r.nc = crossing_count(inst, order);
  r.be = bending_energy(inst, order);
  return r;
}

double metric_value(const Instance& inst, std::span<const int> order, VisualMetric metric) {
  switch (metric) {
    case VisualMetric::adc: return avg_distance_compactness(inst, order);
    case VisualMetric::cdc: return center_distance_compactness(inst, order);
    case VisualMetric::nc: return crossing_count(inst, order);
    case VisualMetric::be: return bending_energy(inst, order);
  }
  return 0.0;
}

double visual_objective(const Components& c, VisualMetric metric, double value, const VisualWeights& w) {
  const double base = w.tau * c.tau + w.lam * c.lam;
  return metric == VisualMetric::adc ? base - w.metric * value : base + w.metric * value;
}

}  // namespace catsp
