#include "catsp/objective.hpp"

#include <string>

#include "catsp/errors.hpp"

namespace catsp {

Weights parse_weights(std::string_view text) {
  std::vector<double> v;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = text.find(',', pos);
    const std::string part(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ConfigError("weights: cannot parse '" + part + "' as a number");
    }
    if (!(value >= 0.0)) throw ConfigError("weights: values must be >= 0");
    v.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (v.size() != 4) throw ConfigError("weights: expected four comma-separated values");
  return {v[0], v[1], v[2], v[3]};
}

RouteContext make_context(const Instance& inst, const VectorField* field) {
  RouteContext ctx;
  ctx.zones = build_zone_index(inst);
  ctx.M = zone_time_matrix(inst, ctx.zones);
  ctx.max_time = inst.travel_time.max();
  if (field != nullptr) {
    const std::vector<Vec2> centers = projected_centroids(*field, ctx.zones);
    ctx.headings = zone_headings(*field, ctx.zones);
    ctx.H = transition_matrix(centers, ctx.headings);
    ctx.A = deviation_matrix(centers, ctx.headings);
    ctx.has_history = true;
  } else {
    ctx.H = SquareMatrix(ctx.zones.size(), 0.5);
    ctx.A = SquareMatrix(ctx.zones.size(), 0.5);
  }
  return ctx;
}

std::vector<int> zone_sequence(const ZoneIndex& zi, std::span<const int> order) {
  std::vector<int> seq;
  for (int v : order) {
    const int z = zi.zone_of[v];
    if (z < 0) continue;
    if (seq.empty() || seq.back() != z) seq.push_back(z);
  }
  return seq;
}

double tau(double total_seconds, std::size_t node_count, double max_time) {
  if (max_time <= 0.0) return 0.0;
  return total_seconds / (static_cast<double>(node_count) * max_time);
}

double tau(const Instance& inst, std::span<const int> order) {
  return tau(route_time(inst, order), inst.node_count(), inst.travel_time.max());
}

double eta(std::span<const int> zseq, const SquareMatrix& H, std::size_t zone_count) {
  if (zone_count == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 1; k < zseq.size(); ++k) sum += 1.0 - H(zseq[k - 1], zseq[k]);
  return sum / static_cast<double>(zone_count);
}

double phi(std::span<const int> zseq, const SquareMatrix& A, std::size_t zone_count) {
  if (zone_count == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 1; k < zseq.size(); ++k) sum += A(zseq[k - 1], zseq[k]);
  return sum / static_cast<double>(zone_count);
}

double lam(std::span<const int> zseq, const ZoneTimeMatrix& M) {
  const double max = M.max();
  if (max <= 0.0 || zseq.empty()) return 0.0;
  const int depot = M.depot();
  double sum = M(depot, zseq.front()) + M(zseq.back(), depot);
  for (std::size_t k = 1; k < zseq.size(); ++k) sum += M(zseq[k - 1], zseq[k]);
  return sum / max;
}

Components components(const Instance& inst, const RouteContext& ctx, std::span<const int> order) {
  const std::vector<int> zseq = zone_sequence(ctx.zones, order);
  const std::size_t m = ctx.zones.size();
  Components c;
  c.tau = tau(route_time(inst, order), inst.node_count(), ctx.max_time);
  c.eta = eta(zseq, ctx.H, m);
  c.phi = phi(zseq, ctx.A, m);
  c.lam = lam(zseq, ctx.M);
  return c;
}

double f_single(const Components& c, const Weights& w) {
  return w.theta1 * c.tau + w.theta2 * c.eta + w.theta3 * c.phi + w.theta4 * c.lam;
}

double zone_f2(const RouteContext& ctx, std::span<const int> zseq, const Weights& w) {
  const std::size_t m = ctx.zones.size();
  return w.theta2 * eta(zseq, ctx.H, m) + w.theta3 * phi(zseq, ctx.A, m) + w.theta4 * lam(zseq, ctx.M);
}

std::pair<double, double> f_pair(const Instance& inst, const RouteContext& ctx,
                                 std::span<const int> order, const Weights& w) {
  return {route_time(inst, order), zone_f2(ctx, zone_sequence(ctx.zones, order), w)};
}

RouteSolution evaluate(const Instance& inst, const RouteContext& ctx, std::vector<int> order,
                       const Weights& w) {
  RouteSolution sol;
  sol.order = std::move(order);
  sol.total_time = route_time(inst, sol.order);
  sol.components = components(inst, ctx, sol.order);
  sol.objective = f_single(sol.components, w);
  sol.f1 = sol.total_time;
  sol.f2 = zone_f2(ctx, zone_sequence(ctx.zones, sol.order), w);
  return sol;
}

}  // namespace catsp
