#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "catsp/history.hpp"
#include "catsp/instance.hpp"
#include "catsp/matrix.hpp"
#include "catsp/zones.hpp"

namespace catsp {

// Weights of tau, eta, phi and lambda.
struct Weights {
  double theta1 = 3.0;
  double theta2 = 1.0;
  double theta3 = 1.0;
  double theta4 = 5.0;

  static Weights dm() { return {3.0, 1.0, 1.0, 5.0}; }
  static Weights base() { return {3.0, 0.0, 0.0, 5.0}; }
  static Weights pareto() { return {1.0, 1.0, 1.0, 5.0}; }
};

// Parses "t1,t2,t3,t4"; throws ConfigError on malformed or negative input.
Weights parse_weights(std::string_view text);

// Per-instance derived data. The instance it was built from must be imputed.
struct RouteContext {
  ZoneIndex zones;
  ZoneTimeMatrix M;
  double max_time = 0.0;  // largest travel_time entry

  bool has_history = false;
  SquareMatrix H;  // m x m, customer zones only
  SquareMatrix A;
  std::vector<Heading> headings;
};

// `inst` must have every stop zoned. With a field, H and A are filled in.
RouteContext make_context(const Instance& inst, const VectorField* field = nullptr);

// Customer-zone visiting sequence of a tour (contiguous blocks collapsed).
std::vector<int> zone_sequence(const ZoneIndex& zi, std::span<const int> order);

// Total time over ((n + 1) * max t); 0 when the matrix is all zeros.
double tau(const Instance& inst, std::span<const int> order);
double tau(double total_seconds, std::size_t node_count, double max_time);

// Sum of (1 - H) over consecutive customer zones, divided by the zone count.
double eta(std::span<const int> zseq, const SquareMatrix& H, std::size_t zone_count);
// Sum of A over consecutive customer zones, divided by the zone count.
double phi(std::span<const int> zseq, const SquareMatrix& A, std::size_t zone_count);
// Sum of M over every zone transition including depot legs, over max(M).
double lam(std::span<const int> zseq, const ZoneTimeMatrix& M);

Components components(const Instance& inst, const RouteContext& ctx, std::span<const int> order);

double f_single(const Components& c, const Weights& w);

// theta2 * eta + theta3 * phi + theta4 * lam for a zone sequence; depends only
// on the zone order.
double zone_f2(const RouteContext& ctx, std::span<const int> zseq, const Weights& w);

// (f1, f2): f1 is the raw tour time in seconds, f2 = theta2 eta + theta3 phi + theta4 lam.
std::pair<double, double> f_pair(const Instance& inst, const RouteContext& ctx,
                                 std::span<const int> order, const Weights& w);

// Fills every cached field of a solution for `order` under weights `w`.
RouteSolution evaluate(const Instance& inst, const RouteContext& ctx, std::vector<int> order,
                       const Weights& w);

}  // namespace catsp
