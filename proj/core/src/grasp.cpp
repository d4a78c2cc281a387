#include "catsp/grasp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "catsp/errors.hpp"
#include "catsp/rng.hpp"

namespace catsp {

Mode Mode::parse(std::string_view text) {
  if (text == "base") return base();
  if (text == "dm") return dm();
  if (text.starts_with("visual:")) {
    if (auto m = parse_visual_metric(text.substr(7))) return visual(*m);
  }
  throw ConfigError("unknown mode '" + std::string(text) + "' (expected base, dm or visual:adc|cdc|nc|be)");
}

std::string Mode::name() const {
  switch (kind) {
    case Kind::base: return "base";
    case Kind::dm: return "dm";
    case Kind::visual: return "visual:" + std::string(to_string(metric));
  }
  return "?";
}

Weights Mode::default_weights() const { return kind == Kind::dm ? Weights::dm() : Weights::base(); }

namespace {

double zone_path_time(const ZoneTimeMatrix& M, std::span<const int> zseq) {
  if (zseq.empty()) return 0.0;
  const int depot = M.depot();
  double sum = M(depot, zseq.front()) + M(zseq.back(), depot);
  for (std::size_t k = 1; k < zseq.size(); ++k) sum += M(zseq[k - 1], zseq[k]);
  return sum;
}

bool improves(const ZoneKey& cand, const ZoneKey& cur) {
  if (cand.violation != cur.violation) return cand.violation < cur.violation;
  return cand.cost < cur.cost - 1e-12;
}

void move_element(std::vector<int>& v, std::size_t from, std::size_t to) {
  if (from < to) {
    std::rotate(v.begin() + from, v.begin() + from + 1, v.begin() + to + 1);
  } else if (from > to) {
    std::rotate(v.begin() + to, v.begin() + from, v.begin() + from + 1);
  }
}

double path_cost(const SquareMatrix& cost, std::span<const int> seq) {
  double sum = 0.0;
  for (std::size_t k = 1; k < seq.size(); ++k) sum += cost(seq[k - 1], seq[k]);
  return sum;
}

struct Block {
  std::size_t begin;  // first position
  std::size_t end;    // one past the last position
};

std::vector<Block> zone_blocks(std::span<const int> order, std::span<const int> zone_of) {
  std::vector<Block> blocks;
  std::size_t k = 1;
  while (k + 1 < order.size()) {
    std::size_t e = k + 1;
    while (e + 1 < order.size() && zone_of[order[e]] == zone_of[order[k]]) ++e;
    if (e - k >= 2) blocks.push_back({k, e});
    k = e;
  }
  return blocks;
}

struct Move {
  double delta = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
};

// Best move of one neighborhood across all zone blocks. Candidate cost is
// evaluated on the window spanning the block and its two neighbors.
template <bool Swap>
Move best_move(const SquareMatrix& cost, const std::vector<int>& order, const std::vector<Block>& blocks) {
  Move best;
  std::vector<int> window;
  for (const Block& b : blocks) {
    const std::span<const int> base(order.data() + b.begin - 1, b.end - b.begin + 2);
    const double base_cost = path_cost(cost, base);
    for (std::size_t i = b.begin; i < b.end; ++i) {
      for (std::size_t j = Swap ? i + 1 : b.begin; j < b.end; ++j) {
        if (i == j) continue;
        window.assign(base.begin(), base.end());
        const std::size_t wi = i - b.begin + 1;
        const std::size_t wj = j - b.begin + 1;
        if (Swap) std::swap(window[wi], window[wj]);
        else move_element(window, wi, wj);
        const double delta = path_cost(cost, window) - base_cost;
        if (delta < best.delta - 1e-9) best = {delta, i, j};
      }
    }
  }
  return best;
}

std::vector<int> build_order(const ZoneIndex& zi, std::span<const int> zseq, Rng& rng) {
  std::vector<int> order{0};
  for (int z : zseq) {
    std::vector<int> members = zi.members[z];
    rng.shuffle(std::span<int>(members));
    order.insert(order.end(), members.begin(), members.end());
  }
  order.push_back(0);
  return order;
}

std::vector<int> random_zone_order(std::size_t m, Rng& rng) {
  std::vector<int> zseq(m);
  std::iota(zseq.begin(), zseq.end(), 0);
  rng.shuffle(std::span<int>(zseq));
  return zseq;
}

}  // namespace

ZoneEvaluator zone_time_evaluator(const ZoneTimeMatrix& M) {
  return [&M](std::span<const int> zseq) { return ZoneKey{0.0, zone_path_time(M, zseq)}; };
}

ZoneEvaluator zone_history_evaluator(const RouteContext& ctx, const Weights& w) {
  return [&ctx, w](std::span<const int> zseq) {
    const double max = ctx.M.max();
    const double m = static_cast<double>(ctx.zones.size());
    double cost = max > 0.0 ? w.theta4 * zone_path_time(ctx.M, zseq) / max : 0.0;
    for (std::size_t k = 1; k < zseq.size(); ++k) {
      const int a = zseq[k - 1];
      const int b = zseq[k];
      cost += (w.theta2 * (1.0 - ctx.H(a, b)) + w.theta3 * ctx.A(a, b)) / m;
    }
    return ZoneKey{0.0, cost};
  };
}

ZoneEvaluator zone_constrained_evaluator(const RouteContext& ctx, const Weights& w, double c) {
  return [&ctx, w, c](std::span<const int> zseq) {
    const double f2 = zone_f2(ctx, zseq, w);
    return ZoneKey{f2 <= c ? 0.0 : f2 - c, zone_path_time(ctx.M, zseq)};
  };
}

std::vector<int> relocate_zones(std::vector<int> zseq, const ZoneEvaluator& eval) {
  ZoneKey cur = eval(zseq);
  std::vector<int> cand;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < zseq.size() && !improved; ++i) {
      for (std::size_t j = 0; j < zseq.size() && !improved; ++j) {
        if (i == j) continue;
        cand = zseq;
        move_element(cand, i, j);
        const ZoneKey key = eval(cand);
        if (improves(key, cur)) {
          zseq.swap(cand);
          cur = key;
          improved = true;
        }
      }
    }
  }
  return zseq;
}

std::vector<int> vnd(const SquareMatrix& cost, std::vector<int> order, std::span<const int> zone_of) {
  const std::vector<Block> blocks = zone_blocks(order, zone_of);
  if (blocks.empty()) return order;
  for (int k = 0; k < 2;) {
    const Move mv = k == 0 ? best_move<false>(cost, order, blocks) : best_move<true>(cost, order, blocks);
    if (mv.delta < 0.0) {
      if (k == 0) move_element(order, mv.i, mv.j);
      else std::swap(order[mv.i], order[mv.j]);
      k = 0;
    } else {
      ++k;
    }
  }
  return order;
}

RouteSolution solve(const Instance& inst, const RouteContext& ctx, const SearchConfig& cfg) {
  if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (cfg.mode.kind == Mode::Kind::dm && !ctx.has_history) {
    throw ConfigError("mode dm needs a context built with historical information");
  }
  const ZoneEvaluator eval = cfg.mode.kind == Mode::Kind::dm ? zone_history_evaluator(ctx, cfg.weights)
                                                             : zone_time_evaluator(ctx.M);
  const bool visual = cfg.mode.kind == Mode::Kind::visual;
  const VisualMetric metric = cfg.mode.metric;
  const bool normalized = metric == VisualMetric::cdc || metric == VisualMetric::nc;
  const VisualWeights vw{cfg.weights.theta1, cfg.weights.theta4, cfg.visual_weight};
  double reference = 1.0;

  RouteSolution best;
  for (int it = 0; it < cfg.iterations; ++it) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(it));
    const std::vector<int> zseq = relocate_zones(random_zone_order(ctx.zones.size(), rng), eval);
    std::vector<int> order = build_order(ctx.zones, zseq, rng);
    if (visual && normalized && it == 0) {
      const double v = metric_value(inst, order, metric);
      reference = v > 0.0 ? v : 1.0;
    }
    order = vnd(inst.travel_time, std::move(order), ctx.zones.zone_of);
    RouteSolution sol = evaluate(inst, ctx, std::move(order), cfg.weights);
    if (visual) {
      double v = metric_value(inst, sol.order, metric);
      if (normalized) v /= reference;
      sol.objective = visual_objective(sol.components, metric, v, vw);
    }
    if (sol.objective < best.objective) best = std::move(sol);
  }
  return best;
}

std::optional<RouteSolution> roh(const Instance& inst, const RouteContext& ctx, const SearchConfig& cfg,
                                 double c) {
  if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");
  const ZoneEvaluator eval = zone_constrained_evaluator(ctx, cfg.weights, c);
  std::optional<RouteSolution> best;
  for (int it = 0; it < cfg.iterations; ++it) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(it));
    const std::vector<int> zseq = relocate_zones(random_zone_order(ctx.zones.size(), rng), eval);
    std::vector<int> order = build_order(ctx.zones, zseq, rng);
    order = vnd(inst.travel_time, std::move(order), ctx.zones.zone_of);
    RouteSolution sol = evaluate(inst, ctx, std::move(order), cfg.weights);
    sol.objective = sol.f1;
    if (sol.f2 <= c && (!best || sol.f1 < best->f1)) best = std::move(sol);
  }
  return best;
}

RouteSolution nearest_neighbor_route(const Instance& inst, const RouteContext& ctx, std::uint64_t seed) {
  const std::size_t m = ctx.zones.size();
  Rng rng = Rng::stream(seed, 0x4E4EULL);
  std::vector<char> used(m, 0);
  std::vector<int> zseq;
  if (m > 0) {
    zseq.push_back(static_cast<int>(rng.below(m)));
    used[zseq.back()] = 1;
  }
  while (zseq.size() < m) {
    int next = -1;
    for (std::size_t z = 0; z < m; ++z) {
      if (!used[z] && (next < 0 || ctx.M(zseq.back(), static_cast<int>(z)) < ctx.M(zseq.back(), next))) {
        next = static_cast<int>(z);
      }
    }
    used[next] = 1;
    zseq.push_back(next);
  }
  std::vector<int> order{0};
  for (int z : zseq) {
    std::vector<int> left = ctx.zones.members[z];
    while (!left.empty()) {
      auto it = std::min_element(left.begin(), left.end(), [&](int a, int b) {
        return inst.time(order.back(), a) < inst.time(order.back(), b);
      });
      order.push_back(*it);
      left.erase(it);
    }
  }
  order.push_back(0);
  return evaluate(inst, ctx, std::move(order), Weights::pareto());
}

}  // namespace catsp
