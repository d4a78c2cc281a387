#include "catsp_app/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "catsp/errors.hpp"
#include "catsp_app/output.hpp"

namespace catsp::app {

using nlohmann::ordered_json;

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<SolveRecord> run_solve(const std::vector<CaseLoader>& cases, const SolveParams& params, int jobs) {
  const std::size_t per_case = params.modes.size();
  std::vector<SolveRecord> records(cases.size() * per_case);
  parallel_for(cases.size(), jobs, [&](std::size_t ci) {
    SolveRecord* rows = &records[ci * per_case];
    for (std::size_t k = 0; k < per_case; ++k) {
      rows[k].mode = params.modes[k].name();
      rows[k].seed = params.seed;
    }
    Case c;
    try {
      c = cases[ci]();
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < per_case; ++k) rows[k].error = e.what();
      return;
    }
    std::optional<RouteContext> plain;
    std::optional<RouteContext> mined;
    for (std::size_t k = 0; k < per_case; ++k) {
      SolveRecord& r = rows[k];
      r.instance = c.name;
      const double t0 = now_ms();
      try {
        const Mode& mode = params.modes[k];
        const RouteContext* ctx = nullptr;
        if (mode.kind == Mode::Kind::dm) {
          if (!c.field) throw ConfigError("mode dm needs a history or field");
          if (!mined) mined = make_context(c.instance, c.field.get());
          ctx = &*mined;
        } else {
          if (!plain) plain = make_context(c.instance);
          ctx = &*plain;
        }
        SearchConfig cfg;
        cfg.mode = mode;
        cfg.weights = params.weights.value_or(mode.default_weights());
        cfg.seed = params.seed;
        cfg.iterations = params.iters;
        r.solution = solve(c.instance, *ctx, cfg);
        r.valid = validate_solution(c.instance, r.solution);
        r.visual = visual_report(c.instance, r.solution.order);
        if (c.actual) r.score = score(r.solution.order, *c.actual, c.instance.travel_time);
        r.route_json = dump_route(c.instance, r.solution.order);
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      r.wall_ms = now_ms() - t0;
    }
  });
  return records;
}

SolveOutputs solve_outputs(const std::vector<SolveRecord>& records) {
  Csv results({"instance", "mode", "seed", "score", "sd", "erp_norm", "erp_e", "f1_seconds", "tau", "eta", "phi",
               "lam", "objective", "adc", "cdc", "nc", "be", "valid"});
  Csv timings({"instance", "mode", "seed", "wall_ms"});
  std::vector<std::string> mode_order;
  std::map<std::string, std::vector<double>> scores;
  ordered_json failed = ordered_json::array();
  for (const SolveRecord& r : records) {
    timings.add({r.instance, r.mode, std::to_string(r.seed), fmt(std::round(r.wall_ms * 1000.0) / 1000.0)});
    if (!scores.count(r.mode)) mode_order.push_back(r.mode);
    auto& bucket = scores[r.mode];
    if (!r.ok) {
      failed.push_back({{"instance", r.instance}, {"mode", r.mode}, {"error", r.error}});
      continue;
    }
    const auto& s = r.solution;
    const auto& sc = r.score;
    if (sc) bucket.push_back(sc->score);
    results.add({r.instance, r.mode, std::to_string(r.seed), sc ? fmt(sc->score) : "", sc ? fmt(sc->sd) : "",
                 sc ? fmt(sc->erp_norm) : "", sc ? std::to_string(sc->erp_e) : "", fmt(s.f1), fmt(s.components.tau),
                 fmt(s.components.eta), fmt(s.components.phi), fmt(s.components.lam), fmt(s.objective),
                 fmt(r.visual.adc), fmt(r.visual.cdc), std::to_string(r.visual.nc), fmt(r.visual.be),
                 r.valid ? "true" : "false"});
  }

  ordered_json modes = ordered_json::array();
  std::ostringstream table;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %6s %10s %10s %10s %10s %10s\n", "mode", "n", "mean", "std", "min",
                "median", "max");
  table << line;
  for (const std::string& m : mode_order) {
    const Stats st = describe(scores[m]);
    modes.push_back({{"mode", m},
                     {"count", st.count},
                     {"mean", st.mean},
                     {"std", st.std},
                     {"min", st.min},
                     {"median", st.median},
                     {"max", st.max}});
    std::snprintf(line, sizeof line, "%-12s %6zu %10.5f %10.5f %10.5f %10.5f %10.5f\n", m.c_str(), st.count,
                  st.mean, st.std, st.min, st.median, st.max);
    table << line;
  }
  ordered_json summary = {{"metric", "score"}, {"modes", modes}, {"failed", failed}};
  return {results.str(), timings.str(), summary.dump(2) + "\n", table.str()};
}

std::vector<ParetoRecord> run_pareto(const std::vector<CaseLoader>& cases, const ParetoParams& params, int jobs) {
  const std::size_t per_case = static_cast<std::size_t>(std::max(1, params.seeds));
  std::vector<ParetoRecord> records(cases.size() * per_case);
  parallel_for(cases.size(), jobs, [&](std::size_t ci) {
    ParetoRecord* rows = &records[ci * per_case];
    for (std::size_t k = 0; k < per_case; ++k) rows[k].seed = params.seed + k;
    Case c;
    std::optional<RouteContext> ctx;
    try {
      c = cases[ci]();
      if (!c.field) throw ConfigError("pareto needs a history or field");
      ctx = make_context(c.instance, c.field.get());
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < per_case; ++k) rows[k].error = e.what();
      return;
    }
    for (std::size_t k = 0; k < per_case; ++k) {
      ParetoRecord& r = rows[k];
      r.instance = c.name;
      const double t0 = now_ms();
      try {
        SearchConfig cfg;
        cfg.weights = params.weights;
        cfg.seed = r.seed;
        cfg.iterations = params.iters;
        HbsOptions hbs = params.hbs;
        if (params.f1_max_nn) hbs.f1_max = nearest_neighbor_route(c.instance, *ctx, r.seed).f1;
        r.f1_max = hbs.f1_max;
        r.result = pareto_solve(c.instance, *ctx, cfg, hbs);
        for (const ArchivedSolution& e : r.result.archive.entries()) {
          if (!validate_solution(c.instance, e.solution)) throw Error("archived solution is not a valid tour");
          std::string ids;
          for (std::size_t p = 0; p < e.solution.order.size(); ++p) {
            if (p) ids += '-';
            ids += c.instance.node(e.solution.order[p]).id;
          }
          r.routes.push_back(std::move(ids));
        }
        r.ok = true;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
      r.wall_ms = now_ms() - t0;
    }
  });
  return records;
}

ParetoOutputs pareto_outputs(const std::vector<ParetoRecord>& records) {
  ParetoOutputs out;
  Csv timings({"instance", "seed", "wall_ms"});
  static constexpr double kGapMinutes[] = {10, 15, 30, 45, 60};
  std::size_t hist[5] = {};
  std::size_t gap_over[5] = {};
  std::vector<double> sizes;
  std::vector<double> gaps;
  int max_calls = 0;
  ordered_json runs = ordered_json::array();
  ordered_json failed = ordered_json::array();

  for (const ParetoRecord& r : records) {
    timings.add({r.instance, std::to_string(r.seed), fmt(std::round(r.wall_ms * 1000.0) / 1000.0)});
    if (!r.ok) {
      failed.push_back({{"instance", r.instance}, {"seed", r.seed}, {"error", r.error}});
      continue;
    }
    const auto& entries = r.result.archive.entries();
    const std::string stem = safe_name(r.instance) + ".seed" + std::to_string(r.seed);
    Csv csv({"f1_seconds", "f2", "epsilon", "tau", "eta", "phi", "lam", "order"});
    std::vector<FrontPoint> pts;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& s = entries[k].solution;
      csv.add({fmt(s.f1), fmt(s.f2), fmt(entries[k].epsilon), fmt(s.components.tau), fmt(s.components.eta),
               fmt(s.components.phi), fmt(s.components.lam), r.routes[k]});
      pts.push_back({s.f1, s.f2});
    }
    out.archives["archives/" + stem + ".csv"] = csv.str();
    out.fronts["fronts/" + stem + ".svg"] = front_svg(pts, r.instance + " seed " + std::to_string(r.seed));

    const std::size_t n = entries.size();
    ++hist[std::min<std::size_t>(n, 5) - 1];
    const double gap = entries.back().solution.f1 - entries.front().solution.f1;
    for (int g = 0; g < 5; ++g) gap_over[g] += gap > kGapMinutes[g] * 60.0;
    sizes.push_back(static_cast<double>(n));
    gaps.push_back(gap);
    max_calls = std::max(max_calls, r.result.roh_calls);
    runs.push_back({{"instance", r.instance},
                    {"seed", r.seed},
                    {"size", n},
                    {"f1_gap_seconds", gap},
                    {"f1_max", r.f1_max},
                    {"roh_calls", r.result.roh_calls}});
  }

  const Stats size_stats = describe(sizes);
  const Stats gap_stats = describe(gaps);
  std::size_t ge2 = 0;
  for (double s : sizes) ge2 += s >= 2.0;
  ordered_json histogram = {{"1", hist[0]}, {"2", hist[1]}, {"3", hist[2]}, {"4", hist[3]}, {"5+", hist[4]}};
  ordered_json over = ordered_json::object();
  for (int g = 0; g < 5; ++g) over[std::to_string(static_cast<int>(kGapMinutes[g]))] = gap_over[g];
  ordered_json agg = {
      {"runs", sizes.size()},
      {"nondominated_histogram", histogram},
      {"share_with_two_or_more", sizes.empty() ? 0.0 : static_cast<double>(ge2) / sizes.size()},
      {"mean_archive_size", size_stats.mean},
      {"f1_gap_seconds", {{"mean", gap_stats.mean}, {"std", gap_stats.std}, {"max", gap_stats.max}}},
      {"f1_gap_over_minutes", over},
      {"max_roh_calls", max_calls},
      {"per_run", runs},
      {"failed", failed}};
  out.aggregate_json = agg.dump(2) + "\n";
  out.timings_csv = timings.str();
  return out;
}

}  // namespace catsp::app
