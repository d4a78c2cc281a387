#include "catsp/history.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "catsp/errors.hpp"

namespace catsp {

std::vector<StepVector> split_segment(Vec2 a, Vec2 b, double beta) {
  std::vector<StepVector> out;
  const double len = distance(a, b);
  if (len == 0.0) return out;
  const Vec2 dir = (b - a) * (1.0 / len);
  const auto full = static_cast<std::size_t>(std::floor(len / beta));
  for (std::size_t k = 0; k < full; ++k) {
    const Vec2 o = a + dir * (beta * static_cast<double>(k));
    out.push_back({o, o + dir * beta});
  }
  const double rest = len - beta * static_cast<double>(full);
  if (rest > 1e-9) out.push_back({a + dir * (beta * static_cast<double>(full)), b});
  return out;
}

double pruning_radius(double alpha) {
  // Solve e^{-x}(1 + x) = kPruneTailMass for x > 1 by bisection.
  double lo = 1.0;
  double hi = 100.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::exp(-mid) * (1.0 + mid) > kPruneTailMass) lo = mid;
    else hi = mid;
  }
  return hi / alpha;
}

VectorField::VectorField(std::vector<StepVector> steps, double alpha, double beta, double ref_lat)
    : steps_(std::move(steps)),
      alpha_(alpha),
      beta_(beta),
      max_d_(pruning_radius(alpha)),
      projection_(ref_lat) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
  if (!(beta > 0.0)) throw ConfigError("beta must be > 0");
  std::vector<Vec2> origins;
  origins.reserve(steps_.size());
  for (const StepVector& s : steps_) origins.push_back(s.origin);
  index_ = KdTree(std::move(origins));
}

Heading VectorField::heading(Vec2 p) const {
  Heading out;
  index_.for_each_within(p, max_d_, [&](int i) {
    const StepVector& s = steps_[i];
    out.h += s.vec() * std::exp(-distance(p, s.origin) * alpha_);
    ++out.support;
  });
  return out;
}

VectorField build_field(std::span<const HistoricalRoute> histories, double beta, double alpha) {
  if (!(beta > 0.0)) throw ConfigError("beta must be > 0");
  double lat_sum = 0.0;
  std::size_t count = 0;
  for (const HistoricalRoute& h : histories) {
    for (const HistoryPoint& p : h.sequence) {
      lat_sum += p.lat;
      ++count;
    }
  }
  const double ref_lat = count == 0 ? 0.0 : lat_sum / static_cast<double>(count);
  const Projection proj(ref_lat);

  std::vector<StepVector> steps;
  for (const HistoricalRoute& h : histories) {
    // Zones in order of first appearance, with their centroids.
    std::vector<std::string> order;
    std::map<std::string, std::pair<Vec2, std::size_t>> acc;
    for (const HistoryPoint& p : h.sequence) {
      if (p.zone_id == kDepotZone) continue;
      auto [it, inserted] = acc.try_emplace(p.zone_id, Vec2{}, 0);
      if (inserted) order.push_back(p.zone_id);
      it->second.first += Vec2{p.lat, p.lng};
      ++it->second.second;
    }
    std::vector<Vec2> centers;
    for (const std::string& z : order) {
      const auto& [sum, k] = acc.at(z);
      const double n = static_cast<double>(k);
      centers.push_back(proj.to_xy(sum.x / n, sum.y / n));
    }
    for (std::size_t k = 1; k < centers.size(); ++k) {
      auto pieces = split_segment(centers[k - 1], centers[k], beta);
      steps.insert(steps.end(), pieces.begin(), pieces.end());
    }
  }
  return VectorField(std::move(steps), alpha, beta, ref_lat);
}

std::string dump_field(const VectorField& field) {
  nlohmann::ordered_json j;
  j["alpha"] = field.alpha();
  j["beta"] = field.beta();
  j["projection_ref_lat"] = field.projection().ref_lat();
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const StepVector& s : field.steps()) {
    steps.push_back({{"ox", s.origin.x}, {"oy", s.origin.y}, {"tx", s.tip.x}, {"ty", s.tip.y}});
  }
  j["steps"] = std::move(steps);
  return j.dump() + "\n";
}

VectorField parse_field(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("field", std::string("malformed JSON: ") + e.what());
  }
  auto number = [&](const nlohmann::json& o, const char* key, const std::string& path) {
    auto it = o.find(key);
    if (it == o.end() || !it->is_number()) throw SchemaError(path + "." + key, "expected a number");
    return it->get<double>();
  };
  if (!j.is_object()) throw SchemaError("field", "expected an object");
  const double alpha = number(j, "alpha", "field");
  const double beta = number(j, "beta", "field");
  const double ref_lat = number(j, "projection_ref_lat", "field");
  auto it = j.find("steps");
  if (it == j.end() || !it->is_array()) throw SchemaError("field.steps", "expected an array");
  std::vector<StepVector> steps;
  steps.reserve(it->size());
  for (std::size_t k = 0; k < it->size(); ++k) {
    const auto& s = (*it)[k];
    const std::string path = "field.steps[" + std::to_string(k) + "]";
    if (!s.is_object()) throw SchemaError(path, "expected an object");
    steps.push_back({{number(s, "ox", path), number(s, "oy", path)},
                     {number(s, "tx", path), number(s, "ty", path)}});
  }
  return VectorField(std::move(steps), alpha, beta, ref_lat);
}

void save_field(const VectorField& field, const std::filesystem::path& path) {
  write_text_file(path, dump_field(field));
}

VectorField load_field(const std::filesystem::path& path) { return parse_field(read_text_file(path)); }

std::vector<Vec2> projected_centroids(const VectorField& field, const ZoneIndex& zi) {
  std::vector<Vec2> out;
  out.reserve(zi.size());
  for (const LatLng& c : zi.centroid) out.push_back(field.projection().to_xy(c.lat, c.lng));
  return out;
}

std::vector<Heading> zone_headings(const VectorField& field, const ZoneIndex& zi) {
  std::vector<Heading> out;
  for (const Vec2& c : projected_centroids(field, zi)) out.push_back(field.heading(c));
  return out;
}

SquareMatrix transition_matrix(std::span<const Vec2> centroids, std::span<const Heading> headings) {
  const std::size_t m = centroids.size();
  double max_dist = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) max_dist = std::max(max_dist, distance(centroids[i], centroids[j]));
  }
  SquareMatrix H(m, 0.5);
  for (std::size_t i = 0; i < m; ++i) {
    if (headings[i].empty()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Vec2 u = centroids[j] - centroids[i];
      if (norm(u) == 0.0) continue;
      const double delta = max_dist > 0.0 ? distance(centroids[i], centroids[j]) / max_dist : 0.0;
      const double eps = 0.5 * (1.0 + std::cos(angle_between(headings[i].h, u)));
      H(i, j) = 0.5 * delta + (1.0 - delta) * eps;
    }
  }
  return H;
}

SquareMatrix transition_matrix(const VectorField& field, const ZoneIndex& zi) {
  return transition_matrix(projected_centroids(field, zi), zone_headings(field, zi));
}

SquareMatrix deviation_matrix(std::span<const Vec2> centroids, std::span<const Heading> headings) {
  const std::size_t m = centroids.size();
  SquareMatrix A(m, 0.5);
  for (std::size_t i = 0; i < m; ++i) {
    if (headings[i].empty()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const Vec2 u = centroids[j] - centroids[i];
      if (norm(u) == 0.0) continue;
      const double degrees = angle_between(u, headings[i].h) * 180.0 / std::numbers::pi;
      A(i, j) = std::clamp(degrees / 180.0, 0.0, 1.0);
    }
  }
  return A;
}

SquareMatrix deviation_matrix(const VectorField& field, const ZoneIndex& zi) {
  return deviation_matrix(projected_centroids(field, zi), zone_headings(field, zi));
}

}  // namespace catsp
