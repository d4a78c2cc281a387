#pragma once

#include <cstddef>
#include <vector>

#include "catsp/geometry.hpp"

namespace catsp {

// Static 2-d tree over a point set, built once by median splits.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(std::vector<Vec2> points);

  std::size_t size() const { return points_.size(); }
  const Vec2& point(std::size_t i) const { return points_[i]; }

  // Calls fn(index) for every point within `radius` (inclusive) of `center`.
  template <typename Fn>
  void for_each_within(Vec2 center, double radius, Fn&& fn) const {
    if (!points_.empty()) visit(0, order_.size(), 0, center, radius, radius * radius, fn);
  }

  std::vector<int> within(Vec2 center, double radius) const;

 private:
  static constexpr std::size_t kLeafSize = 8;

  void build(std::size_t lo, std::size_t hi, int depth);

  template <typename Fn>
  void visit(std::size_t lo, std::size_t hi, int depth, Vec2 c, double r, double r2, Fn& fn) const {
    if (hi - lo <= kLeafSize) {
      for (std::size_t k = lo; k < hi; ++k) {
        const Vec2 d = points_[order_[k]] - c;
        if (d.x * d.x + d.y * d.y <= r2) fn(order_[k]);
      }
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const Vec2 p = points_[order_[mid]];
    const double delta = (depth % 2 == 0) ? c.x - p.x : c.y - p.y;
    const Vec2 d = p - c;
    if (d.x * d.x + d.y * d.y <= r2) fn(order_[mid]);
    if (delta <= r) visit(lo, mid, depth + 1, c, r, r2, fn);
    if (delta >= -r) visit(mid + 1, hi, depth + 1, c, r, r2, fn);
  }

  std::vector<Vec2> points_;
  std::vector<int> order_;
};

}  // namespace catsp
