#include "catsp/pareto.hpp"

#include <algorithm>

#include "catsp/rng.hpp"

namespace catsp {

double rectangle_area(const Rectangle& r, ObjPoint scale) {
  const double w = (r.z2.f1 - r.z1.f1) / (scale.f1 > 0.0 ? scale.f1 : 1.0);
  const double h = (r.z1.f2 - r.z2.f2) / (scale.f2 > 0.0 ? scale.f2 : 1.0);
  return std::max(0.0, w) * std::max(0.0, h);
}

bool ParetoArchive::is_dominated(ObjPoint p) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ArchivedSolution& e) { return weakly_dominates(e.point(), p); });
}

bool ParetoArchive::insert(RouteSolution sol, double epsilon) {
  const ObjPoint p{sol.f1, sol.f2};
  if (is_dominated(p)) return false;
  std::erase_if(entries_, [&](const ArchivedSolution& e) { return dominates(p, e.point()); });
  auto pos = std::lower_bound(entries_.begin(), entries_.end(), p.f1,
                              [](const ArchivedSolution& e, double f1) { return e.solution.f1 < f1; });
  entries_.insert(pos, ArchivedSolution{std::move(sol), epsilon});
  return true;
}

ParetoResult pareto_solve(const Instance& inst, const RouteContext& ctx, const SearchConfig& cfg,
                          const HbsOptions& opt) {
  ParetoResult res;
  std::uint64_t call = 0;
  auto run_roh = [&](double c) {
    SearchConfig sub = cfg;
    sub.seed = splitmix64(cfg.seed + 0x9E3779B97F4A7C15ULL * call++);
    ++res.roh_calls;
    return roh(inst, ctx, sub, c);
  };

  auto extreme = run_roh(std::numeric_limits<double>::infinity());
  const ObjPoint top{extreme->f1, extreme->f2};
  res.archive.insert(std::move(*extreme));

  const ObjPoint corner{std::max(opt.f1_max, top.f1), opt.f2_min};
  const ObjPoint scale{corner.f1 - top.f1, top.f2 - corner.f2};
  std::uint64_t created = 0;
  std::vector<Rectangle>& rects = res.open_rectangles;
  if (top.f2 - corner.f2 > opt.delta_min) rects.push_back({top, corner, created++});

  for (int it = 0; it < opt.n_max && !rects.empty(); ++it) {
    ++res.iterations;
    // Largest normalized area; the earliest-created rectangle wins ties.
    std::size_t pick = 0;
    for (std::size_t k = 1; k < rects.size(); ++k) {
      if (rectangle_area(rects[k], scale) > rectangle_area(rects[pick], scale)) pick = k;
    }
    const Rectangle r = rects[pick];
    const double c = 0.5 * (r.z1.f2 + r.z2.f2);
    auto x = run_roh(c);

    if (!x || res.archive.is_dominated({x->f1, x->f2})) {
      // Nothing new with f2 <= c: discard the lower half.
      rects[pick].z2 = {r.z2.f1, c};
      if (rects[pick].z1.f2 - c <= opt.delta_min) rects.erase(rects.begin() + static_cast<long>(pick));
      continue;
    }

    const ObjPoint p{x->f1, x->f2};
    res.archive.insert(std::move(*x), c);
    rects.erase(rects.begin() + static_cast<long>(pick));

    if (r.z1.f1 < p.f1 && p.f1 <= r.z2.f1) {
      const ObjPoint upper{p.f1, std::max(r.z2.f2, c)};
      if (r.z1.f2 - upper.f2 > opt.delta_min) rects.push_back({r.z1, upper, created++});
    }
    if (r.z1.f2 >= p.f2 && p.f2 >= r.z2.f2) {
      const ObjPoint lower{std::max(p.f1, r.z1.f1), p.f2};
      if (lower.f2 - r.z2.f2 > opt.delta_min) rects.push_back({lower, r.z2, created++});
    }
    std::erase_if(rects, [&](const Rectangle& q) { return dominates(p, q.z1); });
  }
  return res;
}

}  // namespace catsp
