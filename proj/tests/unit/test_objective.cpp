#include <gtest/gtest.h>

#include "catsp/errors.hpp"
#include "catsp/objective.hpp"
#include "support.hpp"

using namespace catsp;
using catsp::testing::matrix_instance;

TEST(Tau, Ceiling) {
  SquareMatrix t(3, 7.0);
  for (int i = 0; i < 3; ++i) t(i, i) = 0.0;
  const Instance inst = matrix_instance(t, {"A", "A"});
  const std::vector<int> order{0, 1, 2, 0};
  EXPECT_DOUBLE_EQ(tau(inst, order), 1.0);
}

TEST(Tau, ZeroMatrixGuard) {
  const Instance inst = matrix_instance(SquareMatrix(3, 0.0), {"A", "A"});
  const std::vector<int> order{0, 1, 2, 0};
  EXPECT_DOUBLE_EQ(tau(inst, order), 0.0);
}

TEST(Tau, MonotoneInArcTime) {
  SquareMatrix t(3, 7.0);
  for (int i = 0; i < 3; ++i) t(i, i) = 0.0;
  const std::vector<int> order{0, 1, 2, 0};
  const double before = tau(matrix_instance(t, {"A", "A"}), order);
  t(1, 2) = 3.0;
  EXPECT_LT(tau(matrix_instance(t, {"A", "A"}), order), before);
}

TEST(Eta, Examples) {
  const std::size_t m = 4;
  const std::vector<int> zseq{0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(eta(zseq, SquareMatrix(m, 1.0), m), 0.0);
  EXPECT_NEAR(eta(zseq, SquareMatrix(m, 0.5), m), (m - 1) * 0.5 / m, 1e-12);
  EXPECT_NEAR(eta(zseq, SquareMatrix(m, 0.0), m), (m - 1.0) / m, 1e-12);
}

TEST(Phi, Examples) {
  const std::vector<int> zseq{0, 1, 2};
  EXPECT_DOUBLE_EQ(phi(zseq, SquareMatrix(3, 0.0), 3), 0.0);
  EXPECT_NEAR(phi(zseq, SquareMatrix(3, 1.0), 3), 2.0 / 3.0, 1e-12);
  SquareMatrix A(3, 0.0);
  A(0, 1) = 0.5;
  A(1, 2) = 0.0;
  EXPECT_NEAR(phi(zseq, A, 3), 0.5 / 3.0, 1e-12);
}

TEST(Lambda, SingleZone) {
  SquareMatrix t(3, 0.0);
  t(0, 1) = 6.0;
  t(0, 2) = 8.0;
  t(1, 0) = 4.0;
  t(2, 0) = 2.0;
  const Instance inst = matrix_instance(t, {"A", "A"});
  const RouteContext ctx = make_context(inst);
  const std::vector<int> zseq{0};
  // depot <-> zone: M = sum / (1 + 2).
  const double m_dz = (6.0 + 8.0) / 3.0;
  const double m_zd = (4.0 + 2.0) / 3.0;
  EXPECT_NEAR(lam(zseq, ctx.M), (m_dz + m_zd) / std::max(m_dz, m_zd), 1e-12);
}

TEST(Lambda, AllTransitionsAtMax) {
  SquareMatrix t(4, 9.0);
  for (int i = 0; i < 4; ++i) t(i, i) = 0.0;
  const Instance inst = matrix_instance(t, {"A", "B", "C"});
  const RouteContext ctx = make_context(inst);
  const std::vector<int> zseq{0, 1, 2};
  EXPECT_NEAR(lam(zseq, ctx.M), 4.0, 1e-12);
}

TEST(Components, IntraZoneOrderDoesNotChangeZoneTerms) {
  SquareMatrix t(5, 0.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) t(i, j) = i == j ? 0.0 : 1.0 + (i * 7 + j * 3) % 5;
  const Instance inst = matrix_instance(t, {"A", "A", "B", "B"});
  const RouteContext ctx = make_context(inst);
  const Components a = components(inst, ctx, std::vector<int>{0, 1, 2, 3, 4, 0});
  const Components b = components(inst, ctx, std::vector<int>{0, 2, 1, 4, 3, 0});
  EXPECT_DOUBLE_EQ(a.lam, b.lam);
  EXPECT_DOUBLE_EQ(a.eta, b.eta);
  EXPECT_DOUBLE_EQ(a.phi, b.phi);
}

TEST(Weights, DefaultsAndParsing) {
  const Weights dm = Weights::dm();
  EXPECT_EQ(dm.theta1, 3.0);
  EXPECT_EQ(dm.theta2, 1.0);
  EXPECT_EQ(dm.theta3, 1.0);
  EXPECT_EQ(dm.theta4, 5.0);
  const Weights w = parse_weights("3,1,1,5");
  EXPECT_EQ(w.theta4, 5.0);
  EXPECT_THROW(parse_weights("1,2,3"), ConfigError);
  EXPECT_THROW(parse_weights("1,-2,3,4"), ConfigError);
  EXPECT_THROW(parse_weights("a,b,c,d"), ConfigError);
}

TEST(FSingle, BaseAndZeroWeights) {
  Components c{0.3, 0.2, 0.1, 1.7};
  EXPECT_NEAR(f_single(c, Weights::base()), 3 * 0.3 + 5 * 1.7, 1e-12);
  EXPECT_DOUBLE_EQ(f_single(c, Weights{0, 0, 0, 0}), 0.0);
}

TEST(FPair, F1IsRawSeconds) {
  SquareMatrix t(3, 0.0);
  t(0, 1) = 10;
  t(1, 2) = 20;
  t(2, 0) = 30;
  t(1, 0) = t(2, 1) = t(0, 2) = 40;
  const Instance inst = matrix_instance(t, {"A", "B"});
  const RouteContext ctx = make_context(inst);
  const std::vector<int> order{0, 1, 2, 0};
  const auto [f1, f2] = f_pair(inst, ctx, order, Weights::pareto());
  EXPECT_DOUBLE_EQ(f1, 60.0);
  const auto zs = zone_sequence(ctx.zones, order);
  EXPECT_NEAR(f2, zone_f2(ctx, zs, Weights::pareto()), 1e-12);
  const RouteSolution sol = evaluate(inst, ctx, order, Weights::pareto());
  EXPECT_DOUBLE_EQ(sol.total_time, 60.0);
  EXPECT_DOUBLE_EQ(sol.f1, 60.0);
}

TEST(FPair, ZeroWhenHistoryAgreesAndTransitionsFree) {
  const Instance inst = matrix_instance(SquareMatrix(3, 0.0), {"A", "A"});
  const RouteContext ctx = make_context(inst);
  const auto [f1, f2] = f_pair(inst, ctx, std::vector<int>{0, 1, 2, 0}, Weights::pareto());
  EXPECT_DOUBLE_EQ(f1, 0.0);
  EXPECT_DOUBLE_EQ(f2, 0.0);
}
