#include "catsp_app/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>

#include <nlohmann/json.hpp>

#include "catsp/amazon.hpp"
#include "catsp/errors.hpp"
#include "catsp/scoring.hpp"
#include "catsp/zones.hpp"
#include "catsp_app/harness.hpp"
#include "catsp_app/output.hpp"

#ifndef CATSP_GIT_REVISION
#define CATSP_GIT_REVISION "unknown"
#endif

namespace catsp::app {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kInstanceSuffix = ".instance.json";

// NAME for NAME.instance.json, the plain stem otherwise.
std::string case_stem(const fs::path& p) {
  const std::string name = p.filename().string();
  if (name.size() > kInstanceSuffix.size() && name.ends_with(kInstanceSuffix)) {
    return name.substr(0, name.size() - kInstanceSuffix.size());
  }
  return p.stem().string();
}

void write_output(const fs::path& path, std::string_view text) {
  try {
    write_text_file(path, text);
  } catch (const std::exception& e) {
    throw UsageError("cannot write '" + path.string() + "': " + e.what());
  }
}

void require_file(const fs::path& p) {
  if (!fs::is_regular_file(p)) throw UsageError("no such file: '" + p.string() + "'");
}

// Manifest: everything needed to re-run the command, plus volatile fields
// (wall time, revision) that are not part of the determinism contract.
void write_manifest(const fs::path& out, const RunInfo& info, ordered_json options, double wall_ms) {
  ordered_json m = {{"command", info.command},
                    {"argv", info.argv},
                    {"options", std::move(options)},
                    {"git_revision", CATSP_GIT_REVISION},
                    {"wall_ms", wall_ms},
                    {"volatile", {"git_revision", "wall_ms"}}};
  write_output(out / "manifest.json", m.dump(2) + "\n");
}

std::shared_ptr<const VectorField> shared_field(VectorField f) {
  return std::make_shared<const VectorField>(std::move(f));
}

// Loaders for instance files; shared history/field inputs are read once.
std::vector<CaseLoader> file_cases(const InputOptions& in, std::vector<std::string>* names = nullptr) {
  const std::vector<fs::path> files = discover_instances(in.instances);
  std::shared_ptr<const VectorField> shared;
  if (in.field) {
    require_file(*in.field);
    shared = shared_field(load_field(*in.field));
  } else if (in.history) {
    require_file(*in.history);
    const auto hs = load_histories(*in.history);
    if (hs.empty()) throw UsageError("history file '" + in.history->string() + "' is empty");
    shared = shared_field(build_field(hs, in.beta, in.alpha));
  }
  std::vector<CaseLoader> loaders;
  for (const fs::path& f : files) {
    if (names) names->push_back(f.string());
    loaders.push_back([f, shared, beta = in.beta, alpha = in.alpha] {
      Case c;
      const Instance raw = load_instance(f);
      c.name = raw.id;
      c.instance = impute_zones(raw);
      const fs::path dir = f.parent_path();
      const std::string stem = case_stem(f);
      const fs::path actual = dir / (stem + ".actual.json");
      if (fs::is_regular_file(actual)) c.actual = load_route(c.instance, actual);
      c.field = shared;
      const fs::path hist = dir / (stem + ".history.json");
      if (!c.field && fs::is_regular_file(hist)) {
        const auto hs = load_histories(hist);
        if (!hs.empty()) c.field = shared_field(build_field(hs, beta, alpha));
      }
      return c;
    });
  }
  return loaders;
}

std::vector<Mode> parse_modes(const std::vector<std::string>& names, bool* wants_pareto = nullptr) {
  std::vector<Mode> modes;
  for (const std::string& n : names) {
    if (n == "pareto") {
      if (!wants_pareto) throw UsageError("mode 'pareto' is only valid for bench; use the pareto command");
      *wants_pareto = true;
      continue;
    }
    try {
      modes.push_back(Mode::parse(n));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  return modes;
}

std::optional<Weights> parse_optional_weights(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  try {
    return parse_weights(*text);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

void apply_f1_max(const std::string& text, ParetoParams& p) {
  if (text == "nn") {
    p.f1_max_nn = true;
    return;
  }
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(v > 0.0)) {
    throw UsageError("--f1-max expects seconds > 0 or 'nn', got '" + text + "'");
  }
  p.hbs.f1_max = v;
}

int report_solve(const std::vector<SolveRecord>& records, const fs::path& out, std::ostream& log) {
  const SolveOutputs o = solve_outputs(records);
  write_output(out / "results.csv", o.results_csv);
  write_output(out / "timings.csv", o.timings_csv);
  write_output(out / "summary.json", o.summary_json);
  int failures = 0;
  for (const SolveRecord& r : records) {
    if (!r.ok) {
      ++failures;
      log << "error: " << (r.instance.empty() ? "?" : r.instance) << " [" << r.mode << "]: " << r.error << '\n';
      continue;
    }
    write_output(out / "routes" / (safe_name(r.instance) + "." + safe_name(r.mode) + ".route.json"), r.route_json);
  }
  log << o.summary_table;
  return failures;
}

int report_pareto(const std::vector<ParetoRecord>& records, const fs::path& out, std::ostream& log) {
  const ParetoOutputs o = pareto_outputs(records);
  for (const auto& [rel, text] : o.archives) write_output(out / rel, text);
  for (const auto& [rel, text] : o.fronts) write_output(out / rel, text);
  write_output(out / "aggregate.json", o.aggregate_json);
  write_output(out / "pareto_timings.csv", o.timings_csv);
  int failures = 0;
  for (const ParetoRecord& r : records) {
    if (!r.ok) {
      ++failures;
      log << "error: " << (r.instance.empty() ? "?" : r.instance) << " [seed " << r.seed << "]: " << r.error << '\n';
    }
  }
  const auto agg = ordered_json::parse(o.aggregate_json);
  log << "pareto runs " << agg["runs"] << ", mean archive size " << agg["mean_archive_size"]
      << ", share with >= 2 solutions " << agg["share_with_two_or_more"] << '\n';
  return failures;
}

}  // namespace

std::vector<fs::path> discover_instances(const std::vector<fs::path>& paths) {
  std::vector<fs::path> out;
  for (const fs::path& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().filename().string().ends_with(kInstanceSuffix)) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(p)) {
      out.push_back(p);
    } else {
      throw UsageError("no such file or directory: '" + p.string() + "'");
    }
  }
  if (out.empty()) throw UsageError("no instance files matched");
  return out;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* v = std::getenv("CATSP_SEED");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long s = std::strtoull(v, &end, 10);
  return (end && *end == '\0') ? s : fallback;
}

int cmd_gen(const GenOptions& opt, const RunInfo& info, std::ostream& log) {
  const double t0 = now_ms();
  if (opt.count < 1) throw UsageError("--count must be >= 1");
  DriverPolicy policy;
  SyntheticLayout layout;
  try {
    policy = parse_policy(opt.policy);
    layout = parse_layout(opt.layout);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  for (int k = 0; k < opt.count; ++k) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
    const SyntheticCase c = generate_synthetic(seed, opt.zones, opt.stops_per_zone, policy, opt.histories, layout);
    const std::string stem = safe_name(c.instance.id);
    write_output(opt.out / (stem + ".instance.json"), dump_instance(c.instance));
    write_output(opt.out / (stem + ".history.json"), dump_histories(c.histories));
    write_output(opt.out / (stem + ".actual.json"), dump_route(c.instance, c.actual));
  }
  log << "generated " << opt.count << " instance(s) in " << opt.out.string() << '\n';
  write_manifest(opt.out, info,
                 {{"seed", opt.seed},
                  {"count", opt.count},
                  {"zones", opt.zones},
                  {"stops_per_zone", opt.stops_per_zone},
                  {"policy", opt.policy},
                  {"layout", opt.layout},
                  {"histories", opt.histories}},
                 now_ms() - t0);
  return kOk;
}

int cmd_mine(const MineOptions& opt, const RunInfo& info, std::ostream& log) {
  const double t0 = now_ms();
  if (opt.histories.empty()) throw UsageError("no history files given");
  std::vector<HistoricalRoute> all;
  for (const fs::path& p : opt.histories) {
    require_file(p);
    auto hs = load_histories(p);
    all.insert(all.end(), std::make_move_iterator(hs.begin()), std::make_move_iterator(hs.end()));
  }
  if (all.empty()) throw UsageError("history input holds no routes");
  const VectorField field = build_field(all, opt.beta, opt.alpha);
  write_output(opt.out, dump_field(field));
  log << field.steps().size() << " step vectors from " << all.size() << " histories\n";
  std::vector<std::string> inputs;
  for (const auto& p : opt.histories) inputs.push_back(p.string());
  const fs::path dir = opt.out.has_parent_path() ? opt.out.parent_path() : fs::path(".");
  write_manifest(dir, info, {{"histories", inputs}, {"beta", opt.beta}, {"alpha", opt.alpha}, {"out", opt.out.string()}},
                 now_ms() - t0);
  return kOk;
}

int cmd_solve(const SolveOptions& opt, const RunInfo& info, std::ostream& log) {
  const double t0 = now_ms();
  if (opt.iters < 1) throw UsageError("--iters must be >= 1");
  SolveParams params;
  params.modes = parse_modes(opt.modes);
  if (params.modes.empty()) throw UsageError("no modes given");
  params.weights = parse_optional_weights(opt.weights);
  params.seed = opt.seed;
  params.iters = opt.iters;
  std::vector<std::string> names;
  const auto cases = file_cases(opt.input, &names);
  const auto records = run_solve(cases, params, opt.jobs);
  const int failures = report_solve(records, opt.out, log);

  if (opt.dump_m) {
    for (const CaseLoader& load : cases) {
      try {
        const Case c = load();
        const ZoneIndex zi = build_zone_index(c.instance);
        const ZoneTimeMatrix M = zone_time_matrix(c.instance, zi);
        std::vector<std::string> header{"zone"};
        for (const auto& z : zi.zones) header.push_back(z);
        header.push_back(std::string(kDepotZone));
        Csv csv(header);
        for (std::size_t i = 0; i <= zi.size(); ++i) {
          std::vector<std::string> row{header[i + 1]};
          for (std::size_t j = 0; j <= zi.size(); ++j) row.push_back(fmt(M(static_cast<int>(i), static_cast<int>(j))));
          csv.add(std::move(row));
        }
        write_output(opt.out / "m" / (safe_name(c.name) + ".csv"), csv.str());
      } catch (const std::exception&) {
        // already reported by the solve rows
      }
    }
  }
  write_manifest(opt.out, info,
                 {{"instances", names},
                  {"modes", opt.modes},
                  {"weights", opt.weights ? ordered_json(*opt.weights) : ordered_json()},
                  {"seed", opt.seed},
                  {"iters", opt.iters},
                  {"history", opt.input.history ? ordered_json(opt.input.history->string()) : ordered_json()},
                  {"field", opt.input.field ? ordered_json(opt.input.field->string()) : ordered_json()},
                  {"beta", opt.input.beta},
                  {"alpha", opt.input.alpha},
                  {"jobs", opt.jobs}},
                 now_ms() - t0);
  return failures ? kPartialFailure : kOk;
}

int cmd_pareto(const ParetoOptions& opt, const RunInfo& info, std::ostream& log) {
  const double t0 = now_ms();
  if (opt.iters < 1) throw UsageError("--iters must be >= 1");
  if (opt.seeds < 1) throw UsageError("--seeds must be >= 1");
  if (opt.n_max < 0) throw UsageError("--n-max must be >= 0");
  ParetoParams params;
  if (auto w = parse_optional_weights(opt.weights)) params.weights = *w;
  params.seed = opt.seed;
  params.seeds = opt.seeds;
  params.iters = opt.iters;
  params.hbs.n_max = opt.n_max;
  params.hbs.f2_min = opt.f2_min;
  params.hbs.delta_min = opt.delta_min;
  apply_f1_max(opt.f1_max, params);
  std::vector<std::string> names;
  const auto cases = file_cases(opt.input, &names);
  const auto records = run_pareto(cases, params, opt.jobs);
  const int failures = report_pareto(records, opt.out, log);
  write_manifest(opt.out, info,
                 {{"instances", names},
                  {"weights", opt.weights ? ordered_json(*opt.weights) : ordered_json("1,1,1,5")},
                  {"seed", opt.seed},
                  {"seeds", opt.seeds},
                  {"iters", opt.iters},
                  {"n_max", opt.n_max},
                  {"f1_max", opt.f1_max},
                  {"f2_min", opt.f2_min},
                  {"delta_min", opt.delta_min},
                  {"history", opt.input.history ? ordered_json(opt.input.history->string()) : ordered_json()},
                  {"field", opt.input.field ? ordered_json(opt.input.field->string()) : ordered_json()},
                  {"jobs", opt.jobs}},
                 now_ms() - t0);
  return failures ? kPartialFailure : kOk;
}

int cmd_score(const ScoreOptions& opt, const RunInfo&, std::ostream& log) {
  require_file(opt.instance);
  require_file(opt.route);
  require_file(opt.actual);
  const Instance inst = load_instance(opt.instance);
  const auto predicted = load_route(inst, opt.route);
  const auto actual = load_route(inst, opt.actual);
  const ScoreReport r = score(predicted, actual, inst.travel_time);
  const ordered_json j = {
      {"instance", inst.id}, {"score", r.score}, {"sd", r.sd}, {"erp_norm", r.erp_norm}, {"erp_e", r.erp_e}};
  log << j.dump(2) << '\n';
  return kOk;
}

int cmd_bench(const BenchOptions& opt, const RunInfo& info, std::ostream& log) {
  const double t0 = now_ms();
  if (opt.count < 1) throw UsageError("--count must be >= 1");
  if (opt.iters < 1) throw UsageError("--iters must be >= 1");
  bool pareto = false;
  SolveParams params;
  params.modes = parse_modes(opt.modes, &pareto);
  params.weights = parse_optional_weights(opt.weights);
  params.seed = opt.seed;
  params.iters = opt.iters;
  DriverPolicy policy;
  SyntheticLayout layout;
  try {
    policy = parse_policy(opt.policy);
    layout = parse_layout(opt.layout);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }

  std::vector<CaseLoader> cases;
  for (int k = 0; k < opt.count; ++k) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(k);
    cases.push_back([=, &opt] {
      SyntheticCase s = generate_synthetic(seed, opt.zones, opt.stops_per_zone, policy, opt.histories, layout);
      Case c;
      c.name = s.instance.id;
      c.instance = std::move(s.instance);
      c.actual = std::move(s.actual);
      c.field = shared_field(build_field(s.histories));
      return c;
    });
  }

  int failures = 0;
  if (!params.modes.empty()) failures += report_solve(run_solve(cases, params, opt.jobs), opt.out, log);
  if (pareto) {
    ParetoParams pp;
    pp.seed = opt.seed;
    pp.seeds = opt.pareto_seeds;
    pp.iters = opt.iters;
    pp.hbs.n_max = opt.n_max;
    pp.hbs.delta_min = opt.delta_min;
    if (auto w = params.weights) pp.weights = *w;
    apply_f1_max(opt.f1_max, pp);
    failures += report_pareto(run_pareto(cases, pp, opt.jobs), opt.out, log);
  }
  write_manifest(opt.out, info,
                 {{"seed", opt.seed},
                  {"count", opt.count},
                  {"zones", opt.zones},
                  {"stops_per_zone", opt.stops_per_zone},
                  {"policy", opt.policy},
                  {"layout", opt.layout},
                  {"histories", opt.histories},
                  {"modes", opt.modes},
                  {"weights", opt.weights ? ordered_json(*opt.weights) : ordered_json()},
                  {"iters", opt.iters},
                  {"pareto_seeds", opt.pareto_seeds},
                  {"n_max", opt.n_max},
                  {"f1_max", opt.f1_max},
                  {"delta_min", opt.delta_min},
                  {"jobs", opt.jobs}},
                 now_ms() - t0);
  return failures ? kPartialFailure : kOk;
}

int cmd_import_amazon(const ImportAmazonOptions& opt, const RunInfo& info, std::ostream& log) {
  const double t0 = now_ms();
  for (const char* f : {"route_data.json", "travel_times.json", "actual_sequences.json"}) require_file(opt.dir / f);
  const auto routes = load_amazon(opt.dir, opt.limit);
  for (std::size_t k = 0; k < routes.size(); ++k) {
    const std::string stem = safe_name(routes[k].instance.id);
    write_output(opt.out / (stem + ".instance.json"), dump_instance(routes[k].instance));
    write_output(opt.out / (stem + ".actual.json"), dump_route(routes[k].instance, routes[k].actual));
    write_output(opt.out / (stem + ".history.json"), dump_histories(station_histories(routes, k, opt.histories)));
  }
  log << "imported " << routes.size() << " route(s) into " << opt.out.string() << '\n';
  write_manifest(opt.out, info,
                 {{"dir", opt.dir.string()}, {"limit", opt.limit}, {"histories", opt.histories}}, now_ms() - t0);
  return kOk;
}

}  // namespace catsp::app
