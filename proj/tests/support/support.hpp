#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catsp/geometry.hpp"
#include "catsp/history.hpp"
#include "catsp/instance.hpp"
#include "catsp/matrix.hpp"
#include "catsp/objective.hpp"
#include "catsp/pareto.hpp"
#include "catsp/zones.hpp"

namespace catsp::testing {

inline constexpr double kRefLat = 47.62;

// Instance with stops at projected meter offsets. Node 0 is the depot at
// `depot`; travel time is Euclidean distance / speed.
inline Instance planar_instance(Vec2 depot, const std::vector<Vec2>& pts,
                                const std::vector<std::optional<std::string>>& zones, double speed = 8.0) {
  const Projection proj(kRefLat);
  Instance inst;
  inst.id = "planar";
  auto make = [&](const std::string& id, Vec2 p) {
    Stop s;
    s.id = id;
    proj.to_latlng(Vec2{p.x, p.y + proj.to_xy(kRefLat, 0.0).y}, s.lat, s.lng);
    return s;
  };
  inst.depot = make("D", depot);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    inst.stops.push_back(make("s" + std::to_string(k), pts[k]));
    inst.stops.back().zone_id = zones[k];
  }
  std::vector<Vec2> all{depot};
  all.insert(all.end(), pts.begin(), pts.end());
  inst.travel_time = SquareMatrix(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) inst.travel_time(i, j) = distance(all[i], all[j]) / speed;
  return inst;
}

// Instance with an explicit matrix; coordinates are a dummy line.
inline Instance matrix_instance(const SquareMatrix& t, const std::vector<std::optional<std::string>>& zones) {
  Instance inst;
  inst.id = "matrix";
  inst.depot = Stop{"D", kRefLat, 0.0, std::nullopt};
  for (std::size_t k = 0; k < zones.size(); ++k) {
    inst.stops.push_back(Stop{"s" + std::to_string(k), kRefLat, 0.001 * static_cast<double>(k + 1), zones[k]});
  }
  inst.travel_time = t;
  return inst;
}

// ---- enumeration of zone-contiguous tours -----------------------------------

inline void for_each_tour(const ZoneIndex& zi, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> zorder(zi.size());
  for (std::size_t z = 0; z < zorder.size(); ++z) zorder[z] = static_cast<int>(z);
  std::vector<std::vector<int>> blocks = zi.members;
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::function<void(std::size_t, std::vector<int>&)> inner = [&](std::size_t k, std::vector<int>& prefix) {
    if (k == zorder.size()) {
      std::vector<int> tour{0};
      tour.insert(tour.end(), prefix.begin(), prefix.end());
      tour.push_back(0);
      fn(tour);
      return;
    }
    std::vector<int> block = blocks[zorder[k]];
    do {
      const std::size_t mark = prefix.size();
      prefix.insert(prefix.end(), block.begin(), block.end());
      inner(k + 1, prefix);
      prefix.resize(mark);
    } while (std::next_permutation(block.begin(), block.end()));
  };
  do {
    std::vector<int> prefix;
    inner(0, prefix);
  } while (std::next_permutation(zorder.begin(), zorder.end()));
}

inline double optimal_time(const Instance& inst, const ZoneIndex& zi) {
  double best = std::numeric_limits<double>::infinity();
  for_each_tour(zi, [&](const std::vector<int>& t) { best = std::min(best, route_time(inst, t)); });
  return best;
}

// ---- dominance and hypervolume ---------------------------------------------

inline std::vector<ObjPoint> nondominated(std::vector<ObjPoint> pts) {
  std::vector<ObjPoint> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      if (q.f1 <= p.f1 && q.f2 <= p.f2 && (q.f1 < p.f1 || q.f2 < p.f2)) dominated = true;
    }
    if (!dominated && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](ObjPoint a, ObjPoint b) { return a.f1 < b.f1; });
  return out;
}

inline bool mutually_nondominated(std::span<const ObjPoint> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (i != j && pts[i].f1 <= pts[j].f1 && pts[i].f2 <= pts[j].f2) return false;
  return true;
}

// Area dominated by `pts` inside the box bounded by `ref` (both minimized),
// computed by grid decomposition over all point coordinates.
inline double hypervolume(std::vector<ObjPoint> pts, ObjPoint ref) {
  std::erase_if(pts, [&](ObjPoint p) { return p.f1 >= ref.f1 || p.f2 >= ref.f2; });
  if (pts.empty()) return 0.0;
  std::vector<double> xs{ref.f1}, ys{ref.f2};
  for (auto p : pts) {
    xs.push_back(p.f1);
    ys.push_back(p.f2);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double cx = 0.5 * (xs[i] + xs[i + 1]);
      const double cy = 0.5 * (ys[j] + ys[j + 1]);
      const bool covered =
          std::any_of(pts.begin(), pts.end(), [&](ObjPoint p) { return p.f1 <= cx && p.f2 <= cy; });
      if (covered) area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
    }
  }
  return area;
}

// ---- scoring oracles -------------------------------------------------------

inline int levenshtein_recursive(std::span<const int> a, std::span<const int> b,
                                 std::map<std::pair<std::size_t, std::size_t>, int>& memo) {
  if (a.empty()) return static_cast<int>(b.size());
  if (b.empty()) return static_cast<int>(a.size());
  const auto key = std::make_pair(a.size(), b.size());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int sub = levenshtein_recursive(a.subspan(1), b.subspan(1), memo) + (a[0] != b[0] ? 1 : 0);
  const int del = levenshtein_recursive(a.subspan(1), b, memo) + 1;
  const int ins = levenshtein_recursive(a, b.subspan(1), memo) + 1;
  return memo[key] = std::min({sub, del, ins});
}

inline int levenshtein_oracle(std::span<const int> a, std::span<const int> b) {
  std::map<std::pair<std::size_t, std::size_t>, int> memo;
  return levenshtein_recursive(a, b, memo);
}

// Sequence deviation straight from its definition on open sequences that
// start with the depot.
inline double sd_oracle(const std::vector<int>& x, const std::vector<int>& B) {
  const std::size_t n = x.size() - 1;
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const auto gi = std::find(B.begin(), B.end(), x[i]) - B.begin();
    const auto gp = std::find(B.begin(), B.end(), x[i - 1]) - B.begin();
    sum += static_cast<double>(std::abs(gi - gp) - 1);
  }
  return 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1)) * sum;
}

// ---- geometry oracles ------------------------------------------------------

inline int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

inline bool proper_intersection(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

inline int crossings_oracle(const std::vector<Vec2>& path) {
  int count = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    for (std::size_t j = i + 2; j + 1 < path.size(); ++j)
      if (proper_intersection(path[i], path[i + 1], path[j], path[j + 1])) ++count;
  return count;
}

inline Vec2 exhaustive_heading(const VectorField& f, Vec2 p) {
  Vec2 h;
  for (const auto& s : f.steps()) h += s.vec() * std::exp(-f.alpha() * distance(p, s.origin));
  return h;
}

}  // namespace catsp::testing
