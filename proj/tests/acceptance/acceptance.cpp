// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "catsp/amazon.hpp"
#include "catsp/grasp.hpp"
#include "catsp/history.hpp"
#include "catsp/pareto.hpp"
#include "catsp/rng.hpp"
#include "catsp/scoring.hpp"
#include "catsp/synthetic.hpp"
#include "catsp/zones.hpp"
#include "catsp_app/harness.hpp"
#include "files.hpp"
#include "support.hpp"

using namespace catsp;
using namespace catsp::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& text) {
  std::printf("     %s\n", text.c_str());
  std::fflush(stdout);
}

std::string num(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Validity and bound bookkeeping shared by several criteria.
struct Ledger {
  long solutions = 0;
  long invalid = 0;
  long archived = 0;
  long bound_violations = 0;
  long pareto_runs = 0;
  long roh_over_budget = 0;
};
Ledger ledger;

void check_pareto_record(const Instance& inst, const ParetoResult& r, int n_max) {
  ++ledger.pareto_runs;
  if (r.roh_calls > n_max + 1) ++ledger.roh_over_budget;
  for (const auto& e : r.archive.entries()) {
    ++ledger.solutions;
    ++ledger.archived;
    if (!validate_solution(inst, e.solution)) ++ledger.invalid;
    if (std::isfinite(e.epsilon) && !(e.solution.f2 <= e.epsilon)) ++ledger.bound_violations;
  }
}

app::CaseLoader synthetic_loader(std::uint64_t seed, int zones, int spz, SyntheticLayout layout = SyntheticLayout::band) {
  return [=] {
    SyntheticCase sc = generate_synthetic(seed, zones, spz, DriverPolicy::sweep, kSyntheticHistories, layout);
    app::Case c;
    c.name = sc.instance.id;
    c.field = std::make_shared<const VectorField>(build_field(sc.histories));
    c.actual = sc.actual;
    c.instance = std::move(sc.instance);
    return c;
  };
}

// ---- criterion 1 -----------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  Rng rng(101);
  int self_nonzero = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + static_cast<int>(rng.below(30));
    std::vector<int> r(n + 1);
    std::iota(r.begin(), r.end(), 0);
    rng.shuffle(std::span<int>(r).subspan(1));
    SquareMatrix t(n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) t(i, j) = i == j ? 0.0 : rng.uniform(1.0, 500.0);
    if (score(r, r, t).score != 0.0) ++self_nonzero;
  }
  int sd_mismatch = 0;
  int ops_mismatch = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + static_cast<int>(rng.below(10));
    std::vector<int> a(n + 1);
    std::iota(a.begin(), a.end(), 0);
    std::vector<int> b = a;
    rng.shuffle(std::span<int>(a).subspan(1));
    rng.shuffle(std::span<int>(b).subspan(1));
    if (std::abs(sequence_deviation(a, b) - sd_oracle(a, b)) > 1e-12) ++sd_mismatch;
    // Arbitrary sequences for edit distance, lengths 0..10.
    std::vector<int> x(rng.below(11));
    std::vector<int> y(rng.below(11));
    for (int& v : x) v = static_cast<int>(rng.below(6));
    for (int& v : y) v = static_cast<int>(rng.below(6));
    if (edit_ops(x, y) != levenshtein_oracle(x, y)) ++ops_mismatch;
    if (edit_ops(a, b) != levenshtein_oracle(a, b)) ++ops_mismatch;
  }
  const double secs = seconds_since(t0);
  report(1, self_nonzero == 0 && sd_mismatch == 0 && ops_mismatch == 0 && secs < 10.0,
         "score(x,x)!=0 on " + std::to_string(self_nonzero) + "/100, SD mismatches " + std::to_string(sd_mismatch) +
             "/1000, edit_ops mismatches " + std::to_string(ops_mismatch) + "/2000, " + num(secs, 2) + " s");
}

// ---- criterion 2 -----------------------------------------------------------

struct Tiny {
  int zones;
  int spz;
};

Tiny tiny_shape(std::uint64_t seed) { return seed % 2 ? Tiny{3, 2} : Tiny{2, 4}; }

void criterion2() {
  const auto t0 = Clock::now();
  constexpr int kInstances = 50;
  constexpr int kSeeds = 10;
  int below = 0;
  int runs = 0;
  int not_nondominated = 0;
  double worst = 1.0;
  std::vector<double> nn_medians;
  for (std::uint64_t s = 1; s <= kInstances; ++s) {
    const Tiny shape = tiny_shape(s);
    const SyntheticCase sc = generate_synthetic(1000 + s, shape.zones, shape.spz, DriverPolicy::sweep);
    const VectorField field = build_field(sc.histories);
    const RouteContext ctx = make_context(sc.instance, &field);
    const Weights w = Weights::pareto();
    std::vector<ObjPoint> all;
    for_each_tour(ctx.zones, [&](const std::vector<int>& tour) {
      const auto [f1, f2] = f_pair(sc.instance, ctx, tour, w);
      all.push_back({f1, f2});
    });
    const auto front = nondominated(all);
    std::vector<double> ratios;
    std::vector<double> nn_ratios;
    for (int k = 0; k < kSeeds; ++k) {
      SearchConfig cfg;
      cfg.weights = w;
      cfg.seed = static_cast<std::uint64_t>(k + 1);
      const ParetoResult r = pareto_solve(sc.instance, ctx, cfg);
      check_pareto_record(sc.instance, r, kDefaultNMax);
      ++runs;
      std::vector<ObjPoint> got;
      for (const auto& e : r.archive.entries()) got.push_back(e.point());
      if (!mutually_nondominated(got)) ++not_nondominated;
      const ObjPoint extreme = r.archive.entries().front().point();
      const ObjPoint ref{kDefaultF1Max, extreme.f2};
      const double hv_front = hypervolume(front, ref);
      ratios.push_back(hv_front > 0 ? hypervolume(got, ref) / hv_front : 1.0);

      HbsOptions nn_opt;
      nn_opt.f1_max = nearest_neighbor_route(sc.instance, ctx, cfg.seed).total_time;
      const ParetoResult rn = pareto_solve(sc.instance, ctx, cfg, nn_opt);
      check_pareto_record(sc.instance, rn, kDefaultNMax);
      std::vector<ObjPoint> got_nn;
      for (const auto& e : rn.archive.entries()) got_nn.push_back(e.point());
      if (!mutually_nondominated(got_nn)) ++not_nondominated;
      const ObjPoint ref_nn{nn_opt.f1_max, rn.archive.entries().front().point().f2};
      const double hv_front_nn = hypervolume(front, ref_nn);
      nn_ratios.push_back(hv_front_nn > 0 ? hypervolume(got_nn, ref_nn) / hv_front_nn : 1.0);
    }
    const double med = median(ratios);
    worst = std::min(worst, med);
    if (med < 0.9) ++below;
    nn_medians.push_back(median(nn_ratios));
  }
  const double secs = seconds_since(t0);
  report(2, below == 0 && not_nondominated == 0 && secs < 300.0,
         "instances with median HV ratio < 0.9: " + std::to_string(below) + "/" + std::to_string(kInstances) +
             " (worst median " + num(worst) + "), archives not non-dominated: " + std::to_string(not_nondominated) +
             "/" + std::to_string(2 * runs) + ", " + num(secs, 1) + " s");
  info("f1_max=nn variant: mean of per-instance median HV ratio " + num(mean(nn_medians)) + ", minimum " +
       num(*std::min_element(nn_medians.begin(), nn_medians.end())) + " (informational)");
}

// ---- criterion 3 -----------------------------------------------------------

void criterion3() {
  const auto t0 = Clock::now();
  constexpr int kInstances = 100;
  std::vector<app::CaseLoader> cases;
  for (int s = 1; s <= kInstances; ++s) cases.push_back(synthetic_loader(static_cast<std::uint64_t>(s), 10, 3));
  app::SolveParams params;
  for (const char* m : {"base", "dm", "visual:adc", "visual:cdc", "visual:nc", "visual:be"}) {
    params.modes.push_back(Mode::parse(m));
  }
  const auto records = app::run_solve(cases, params, 1);
  std::map<std::string, std::vector<double>> scores;
  int failed = 0;
  for (const auto& r : records) {
    ++ledger.solutions;
    if (!r.ok || !r.score) {
      ++failed;
      continue;
    }
    if (!r.valid) ++ledger.invalid;
    scores[r.mode].push_back(r.score->score);
  }
  const double base = mean(scores["base"]);
  const double dm = mean(scores["dm"]);
  bool dm_below_visual = true;
  std::string visual_text;
  for (const char* m : {"visual:adc", "visual:cdc", "visual:nc", "visual:be"}) {
    const double v = mean(scores[m]);
    dm_below_visual = dm_below_visual && dm < v;
    visual_text += std::string(" ") + m + "=" + num(v);
  }
  const double margin = base > 0 ? (base - dm) / base : 0.0;
  const double secs = seconds_since(t0);
  report(3, failed == 0 && dm < base && dm_below_visual && margin >= 0.10 && secs < 900.0,
         std::to_string(kInstances) + " instances 10x3: mean score base=" + num(base) + " dm=" + num(dm) +
             visual_text + ", dm margin " + num(100 * margin, 1) + "%, " + num(secs, 1) + " s");
}

// ---- criterion 3, optional Amazon job ---------------------------------------

void criterion3_amazon() {
  const char* dir = std::getenv("CATSP_AMAZON_DIR");
  if (!dir || !*dir) {
    info("criterion 3 Amazon job skipped (CATSP_AMAZON_DIR not set)");
    return;
  }
  const auto t0 = Clock::now();
  const auto routes = std::make_shared<const std::vector<AmazonRoute>>(load_amazon(dir));
  std::vector<app::CaseLoader> cases;
  for (std::size_t k = 0; k < routes->size() && cases.size() < 50; ++k) {
    cases.push_back([routes, k] {
      app::Case c;
      const AmazonRoute& r = (*routes)[k];
      c.instance = impute_zones(r.instance);
      c.name = c.instance.id;
      c.actual = r.actual;
      c.field = std::make_shared<const VectorField>(build_field(station_histories(*routes, k, kSyntheticHistories)));
      return c;
    });
  }
  app::SolveParams params;
  params.modes = {Mode::base(), Mode::dm()};
  const auto records = app::run_solve(cases, params, 1);
  std::vector<double> base, dm;
  for (const auto& r : records) {
    if (!r.ok || !r.score) continue;
    (r.mode == "base" ? base : dm).push_back(r.score->score);
  }
  const bool pass = !base.empty() && mean(dm) < mean(base);
  std::printf("%s criterion 3 (Amazon job): %zu routes, mean score base=%s dm=%s, %s s\n", pass ? "PASS" : "FAIL",
              cases.size(), num(mean(base)).c_str(), num(mean(dm)).c_str(), num(seconds_since(t0), 1).c_str());
  if (!pass) ++failures;
}

// ---- criterion 4 -----------------------------------------------------------

void criterion4() {
  const auto t0 = Clock::now();
  constexpr int kInstances = 100;
  std::vector<app::CaseLoader> cases;
  for (int s = 1; s <= kInstances; ++s) cases.push_back(synthetic_loader(static_cast<std::uint64_t>(500 + s), 12, 3));
  app::ParetoParams params;
  params.seeds = 10;
  const auto records = app::run_pareto(cases, params, 1);
  int two_or_more = 0;
  double total = 0.0;
  int failed = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    if (!r.ok) {
      ++failed;
      continue;
    }
    const SyntheticCase sc = generate_synthetic(501 + k / 10, 12, 3, DriverPolicy::sweep);
    check_pareto_record(sc.instance, r.result, params.hbs.n_max);
    const auto size = r.result.archive.size();
    if (size >= 2) ++two_or_more;
    total += static_cast<double>(size);
  }
  const double n = static_cast<double>(records.size());
  const double share = two_or_more / n;
  const double avg = total / n;
  const double secs = seconds_since(t0);
  report(4, failed == 0 && share >= 0.6 && avg >= 2.0 && secs < 600.0,
         std::to_string(kInstances) + " instances 12x3 x 10 seeds: share with >=2 solutions " + num(share, 3) +
             ", mean archive size " + num(avg, 3) + ", " + num(secs, 1) + " s");
}

// ---- criterion 5 -----------------------------------------------------------

void criterion5() {
  constexpr int kSteps = 100000;
  constexpr int kQueries = 1000;
  constexpr double kSide = 25000.0;
  Rng rng(55);
  std::vector<StepVector> steps;
  steps.reserve(kSteps);
  for (int k = 0; k < kSteps; ++k) {
    const Vec2 o{rng.uniform(0, kSide), rng.uniform(0, kSide)};
    // Locally aligned flow with noise: the hard case for truncation.
    const double a = std::sin(o.x / 4000.0) + 0.5 * std::cos(o.y / 3000.0) + rng.uniform(-0.3, 0.3);
    steps.push_back({o, o + Vec2{200.0 * std::cos(a), 200.0 * std::sin(a)}});
  }
  const VectorField field(std::move(steps), kDefaultAlpha, kDefaultBeta, 47.62);
  std::vector<Vec2> queries;
  for (int q = 0; q < kQueries; ++q) queries.push_back({rng.uniform(0, kSide), rng.uniform(0, kSide)});

  std::vector<Vec2> pruned(kQueries);
  const auto tp = Clock::now();
  for (int q = 0; q < kQueries; ++q) pruned[q] = field.heading(queries[q]).h;
  const double t_pruned = seconds_since(tp);
  std::vector<Vec2> exact(kQueries);
  const auto te = Clock::now();
  for (int q = 0; q < kQueries; ++q) exact[q] = exhaustive_heading(field, queries[q]);
  const double t_exact = seconds_since(te);

  double worst = 0.0;
  for (int q = 0; q < kQueries; ++q) {
    const double denom = norm(exact[q]);
    const double err = denom > 0 ? norm(pruned[q] - exact[q]) / denom : norm(pruned[q]);
    worst = std::max(worst, err);
  }
  const double speedup = t_exact / std::max(t_pruned, 1e-9);
  report(5, worst <= 1e-3 && speedup >= 10.0,
         "max relative error " + num(worst * 1e3, 4) + "e-3 over " + std::to_string(kQueries) + " queries, speedup " +
             num(speedup, 1) + "x (pruned " + num(t_pruned * 1e3, 1) + " ms, exhaustive " + num(t_exact * 1e3, 1) +
             " ms)");
}

// ---- criterion 6 -----------------------------------------------------------

void criterion6() {
  constexpr int kTrials = 100;
  int optimal = 0;
  for (int s = 1; s <= kTrials; ++s) {
    const Tiny shape = tiny_shape(static_cast<std::uint64_t>(s));
    const SyntheticCase sc = generate_synthetic(2000 + s, shape.zones, shape.spz, DriverPolicy::sweep);
    const RouteContext ctx = make_context(sc.instance);
    const Weights w = Weights::base();
    double best = std::numeric_limits<double>::infinity();
    for_each_tour(ctx.zones, [&](const std::vector<int>& tour) {
      best = std::min(best, f_single(components(sc.instance, ctx, tour), w));
    });
    SearchConfig cfg;
    cfg.mode = Mode::base();
    cfg.weights = w;
    cfg.iterations = 50;
    cfg.seed = static_cast<std::uint64_t>(s);
    const RouteSolution sol = solve(sc.instance, ctx, cfg);
    ++ledger.solutions;
    if (!validate_solution(sc.instance, sol)) ++ledger.invalid;
    const double got = f_single(components(sc.instance, ctx, sol.order), w);
    if (got <= best + 1e-9 * std::max(1.0, std::abs(best))) ++optimal;
  }
  const bool opt_ok = optimal >= 95;
  const bool valid_ok = ledger.invalid == 0;
  report(6, opt_ok && valid_ok,
         "exact optimum in " + std::to_string(optimal) + "/" + std::to_string(kTrials) + " trials, invalid solutions " +
             std::to_string(ledger.invalid) + "/" + std::to_string(ledger.solutions) + " across suites");
}

// ---- criterion 7 -----------------------------------------------------------

void criterion7() {
  report(7, ledger.bound_violations == 0 && ledger.roh_over_budget == 0 && ledger.pareto_runs > 0,
         "f2 above its bound: " + std::to_string(ledger.bound_violations) + "/" + std::to_string(ledger.archived) +
             " archived solutions, runs over n_max+1 ROH calls: " + std::to_string(ledger.roh_over_budget) + "/" +
             std::to_string(ledger.pareto_runs));
}

// ---- criterion 8 -----------------------------------------------------------

void criterion8(const std::string& exe) {
  const auto root = fresh_dir("determinism");
  const std::string q = "\"" + exe + "\" ";
  std::vector<std::string> failed_steps;
  std::vector<std::string> differing;
  int compared = 0;
  auto run_twice = [&](const std::string& name, const std::string& args_template) {
    for (const char* tag : {"a", "b"}) {
      std::string args = args_template;
      for (std::size_t p; (p = args.find("{out}")) != std::string::npos;) {
        args.replace(p, 5, (root / (name + "-" + tag)).string());
      }
      if (run_quiet(q + args) != 0) failed_steps.push_back(name);
    }
    const auto a = stable_outputs(root / (name + "-a"));
    const auto b = stable_outputs(root / (name + "-b"));
    compared += static_cast<int>(a.size());
    if (a != b || a.empty()) differing.push_back(name);
  };
  run_twice("gen", "gen --seed 7 --count 3 --zones 4 --stops-per-zone 3 --out {out}");
  const std::string in = (root / "gen-a").string();
  const std::string hist = (root / "gen-a" / "syn-band-7-4x3-sweep.history.json").string();
  std::filesystem::create_directories(root / "mine-a");
  std::filesystem::create_directories(root / "mine-b");
  run_twice("mine", "mine " + hist + " --out {out}/field.json");
  run_twice("solve", "solve " + in + " --mode base,dm,visual:nc,visual:adc --iters 10 --dump-m --out {out}");
  run_twice("pareto", "pareto " + in + " --seeds 2 --iters 10 --n-max 8 --out {out}");
  run_twice("bench", "bench --count 2 --zones 3 --stops-per-zone 2 --iters 5 --pareto-seeds 2 --n-max 5 "
                     "--mode base,dm,visual:be,pareto --out {out}");
  for (const char* tag : {"a", "b"}) {
    std::filesystem::create_directories(root / (std::string("score-") + tag));
    const std::string cmd = q + "score " + in + "/syn-band-7-4x3-sweep.instance.json " +
                            (root / "solve-a" / "routes" / "syn-band-7-4x3-sweep.dm.route.json").string() + " " + in +
                            "/syn-band-7-4x3-sweep.actual.json > " +
                            (root / (std::string("score-") + tag) / "score.txt").string() + " 2>&1";
    if (std::system(cmd.c_str()) != 0) failed_steps.push_back("score");
  }
  if (stable_outputs(root / "score-a") != stable_outputs(root / "score-b")) differing.push_back("score");
  ++compared;
  std::string detail = std::to_string(compared) + " output files compared across gen, mine, solve, pareto, bench, score";
  for (const auto& s : failed_steps) detail += "; command failed: " + s;
  for (const auto& s : differing) detail += "; outputs differ: " + s;
  report(8, failed_steps.empty() && differing.empty(), detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : CATSP_EXE;
  const auto t0 = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion3_amazon();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8(exe);
  std::printf("acceptance finished in %s s, %d failing\n", num(seconds_since(t0), 1).c_str(), failures);
  return failures == 0 ? 0 : 1;
}
