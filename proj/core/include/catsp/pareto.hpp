#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "catsp/grasp.hpp"
#include "catsp/instance.hpp"
#include "catsp/objective.hpp"

namespace catsp {

inline constexpr double kDefaultF1Max = 86400.0;  // seconds
inline constexpr double kDefaultF2Min = 0.0;
inline constexpr double kDefaultDeltaMin = 0.01;
inline constexpr int kDefaultNMax = 50;

struct ObjPoint {
  double f1 = 0.0;
  double f2 = 0.0;
  friend bool operator==(ObjPoint, ObjPoint) = default;
};

// Both objectives minimized.
inline bool weakly_dominates(ObjPoint a, ObjPoint b) { return a.f1 <= b.f1 && a.f2 <= b.f2; }
inline bool dominates(ObjPoint a, ObjPoint b) { return weakly_dominates(a, b) && !(a == b); }

// Box in objective space: z1 is the upper-left corner (smaller f1, larger
// f2), z2 the lower-right corner.
struct Rectangle {
  ObjPoint z1;
  ObjPoint z2;
  std::uint64_t created = 0;  // creation order, breaks area ties
};

// Area with each axis divided by `scale` (the initial box's extents).
double rectangle_area(const Rectangle& r, ObjPoint scale = {1.0, 1.0});

struct ArchivedSolution {
  RouteSolution solution;
  double epsilon = std::numeric_limits<double>::infinity();  // f2 bound it was found under

  ObjPoint point() const { return {solution.f1, solution.f2}; }
};

// Mutually non-dominated solutions, kept sorted by increasing f1.
class ParetoArchive {
 public:
  // Adds `sol` unless an archived point weakly dominates it; removes the
  // points it dominates. Returns whether it was added.
  bool insert(RouteSolution sol, double epsilon = std::numeric_limits<double>::infinity());
  bool is_dominated(ObjPoint p) const;

  const std::vector<ArchivedSolution>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<ArchivedSolution> entries_;
};

struct HbsOptions {
  int n_max = kDefaultNMax;
  double f1_max = kDefaultF1Max;
  double f2_min = kDefaultF2Min;
  double delta_min = kDefaultDeltaMin;
};

struct ParetoResult {
  ParetoArchive archive;
  std::vector<Rectangle> open_rectangles;
  int roh_calls = 0;
  int iterations = 0;
};

// Heuristic box splitting over (f1, f2) driven by roh(). cfg.weights weight f2.
ParetoResult pareto_solve(const Instance& inst, const RouteContext& ctx, const SearchConfig& cfg,
                          const HbsOptions& opt = {});

}  // namespace catsp
