#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "catsp/grasp.hpp"
#include "catsp/pareto.hpp"
#include "catsp/rng.hpp"
#include "catsp/synthetic.hpp"
#include "support.hpp"

using namespace catsp;
using catsp::testing::for_each_tour;
using catsp::testing::hypervolume;
using catsp::testing::matrix_instance;
using catsp::testing::mutually_nondominated;
using catsp::testing::nondominated;

namespace {

RouteSolution at(double f1, double f2) {
  RouteSolution s;
  s.f1 = f1;
  s.f2 = f2;
  return s;
}

std::vector<ObjPoint> points(const ParetoArchive& a) {
  std::vector<ObjPoint> out;
  for (const auto& e : a.entries()) out.push_back(e.point());
  return out;
}

}  // namespace

TEST(Archive, InsertExample) {
  ParetoArchive a;
  EXPECT_TRUE(a.insert(at(10, 5)));
  EXPECT_TRUE(a.insert(at(8, 7)));
  EXPECT_TRUE(a.insert(at(9, 4)));
  EXPECT_EQ(points(a), (std::vector<ObjPoint>{{8, 7}, {9, 4}}));
  EXPECT_EQ(points(a), nondominated({{10, 5}, {8, 7}, {9, 4}}));
}

TEST(Archive, DuplicateRejected) {
  ParetoArchive a;
  a.insert(at(3, 3));
  EXPECT_FALSE(a.insert(at(3, 3)));
  EXPECT_EQ(a.size(), 1u);
}

TEST(Archive, DominatingPointLeavesSingleton) {
  ParetoArchive a;
  a.insert(at(5, 1));
  a.insert(at(1, 5));
  a.insert(at(3, 3));
  EXPECT_TRUE(a.insert(at(0.5, 0.5)));
  EXPECT_EQ(a.size(), 1u);
  EXPECT_TRUE(a.is_dominated({0.6, 0.5}));
  EXPECT_TRUE(a.is_dominated({0.5, 0.5}));
  EXPECT_FALSE(a.is_dominated({0.4, 9}));
}

TEST(Archive, RandomInsertsMatchPairwiseOracle) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    ParetoArchive a;
    std::vector<ObjPoint> all;
    for (int k = 0; k < 30; ++k) {
      const ObjPoint p{static_cast<double>(rng.below(20)), static_cast<double>(rng.below(20))};
      all.push_back(p);
      a.insert(at(p.f1, p.f2));
      const auto pts = points(a);
      ASSERT_TRUE(mutually_nondominated(pts));
    }
    EXPECT_EQ(points(a), nondominated(all));
  }
}

TEST(RectangleArea, Normalization) {
  const Rectangle init{{100, 8}, {86400, 0}, 0};
  const ObjPoint scale{86400 - 100, 8};
  EXPECT_DOUBLE_EQ(rectangle_area(init, scale), 1.0);
  const Rectangle half{{100, 8}, {86400, 4}, 1};
  EXPECT_DOUBLE_EQ(rectangle_area(half, scale), 0.5);
  const Rectangle flat{{100, 4}, {86400, 4}, 2};
  EXPECT_DOUBLE_EQ(rectangle_area(flat, scale), 0.0);
}

TEST(ParetoSolve, DefaultsFromTable) {
  const HbsOptions o;
  EXPECT_EQ(o.n_max, 50);
  EXPECT_EQ(o.f1_max, 86400.0);
  EXPECT_EQ(o.f2_min, 0.0);
  EXPECT_EQ(o.delta_min, 0.01);
}

TEST(ParetoSolve, NonConflictingObjectivesGiveOnePoint) {
  // One zone: f2 only depends on the single zone, so every tour has the same f2.
  SquareMatrix t(4, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t(i, j) = i == j ? 0.0 : 10.0 + i + 2 * j;
  const Instance inst = matrix_instance(t, {"A", "A", "A"});
  const RouteContext ctx = make_context(inst);
  SearchConfig cfg;
  cfg.weights = Weights::pareto();
  const ParetoResult r = pareto_solve(inst, ctx, cfg);
  EXPECT_EQ(r.archive.size(), 1u);
}

TEST(ParetoSolve, TinyInstancesRecoverEnumeratedFront) {
  int conflicting = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const SyntheticCase sc = generate_synthetic(seed, 3, 2, DriverPolicy::sweep);
    const VectorField field = build_field(sc.histories);
    const RouteContext ctx = make_context(sc.instance, &field);
    SearchConfig cfg;
    cfg.weights = Weights::pareto();
    const ParetoResult r = pareto_solve(sc.instance, ctx, cfg);

    std::vector<ObjPoint> all;
    for_each_tour(ctx.zones, [&](const std::vector<int>& tour) {
      const auto [f1, f2] = f_pair(sc.instance, ctx, tour, cfg.weights);
      all.push_back({f1, f2});
    });
    const auto front = nondominated(all);
    const auto got = points(r.archive);
    ASSERT_TRUE(mutually_nondominated(got));
    EXPECT_LE(r.roh_calls, kDefaultNMax + 1);
    for (const auto& e : r.archive.entries()) EXPECT_TRUE(validate_solution(sc.instance, e.solution));
    if (front.size() < 2) {
      EXPECT_EQ(got, front);
      continue;
    }
    ++conflicting;
    const ObjPoint ref{kDefaultF1Max, got.front().f2};
    EXPECT_GE(hypervolume(got, ref) / hypervolume(front, ref), 0.9) << "seed " << seed;
  }
  EXPECT_GT(conflicting, 0);
}

TEST(ParetoSolve, ArchivedSolutionsRespectTheirBound) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SyntheticCase sc = generate_synthetic(seed, 6, 2, DriverPolicy::sweep);
    const VectorField field = build_field(sc.histories);
    const RouteContext ctx = make_context(sc.instance, &field);
    SearchConfig cfg;
    cfg.weights = Weights::pareto();
    cfg.iterations = 20;
    HbsOptions opt;
    opt.n_max = 10;
    const ParetoResult r = pareto_solve(sc.instance, ctx, cfg, opt);
    EXPECT_LE(r.roh_calls, opt.n_max + 1);
    EXPECT_FALSE(r.archive.empty());
    for (const auto& e : r.archive.entries()) {
      if (std::isfinite(e.epsilon)) EXPECT_LE(e.solution.f2, e.epsilon);
    }
  }
}

TEST(Hypervolume, OracleSelfCheck) {
  // Two points against ref (10, 10): union of [2,10]x[6,10] and [5,10]x[1,10].
  const double hv = hypervolume({{2, 6}, {5, 1}}, {10, 10});
  EXPECT_DOUBLE_EQ(hv, 8 * 4 + 5 * 9 - 5 * 4);
}
