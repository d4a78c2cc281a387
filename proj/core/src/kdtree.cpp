#include "catsp/kdtree.hpp"

#include <algorithm>
#include <numeric>

namespace catsp {

KdTree::KdTree(std::vector<Vec2> points) : points_(std::move(points)), order_(points_.size()) {
  std::iota(order_.begin(), order_.end(), 0);
  build(0, order_.size(), 0);
}

void KdTree::build(std::size_t lo, std::size_t hi, int depth) {
  if (hi - lo <= kLeafSize) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  const bool by_x = depth % 2 == 0;
  std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi, [&](int a, int b) {
    const Vec2 pa = points_[a];
    const Vec2 pb = points_[b];
    return by_x ? (pa.x < pb.x || (pa.x == pb.x && a < b)) : (pa.y < pb.y || (pa.y == pb.y && a < b));
  });
  build(lo, mid, depth + 1);
  build(mid + 1, hi, depth + 1);
}

std::vector<int> KdTree::within(Vec2 center, double radius) const {
  std::vector<int> out;
  for_each_within(center, radius, [&](int i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace catsp
