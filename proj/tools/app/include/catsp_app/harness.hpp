#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catsp/grasp.hpp"
#include "catsp/history.hpp"
#include "catsp/instance.hpp"
#include "catsp/pareto.hpp"
#include "catsp/scoring.hpp"
#include "catsp/visual.hpp"

namespace catsp::app {

// One prepared problem: an imputed instance, optionally the executed route to
// score against and a history field.
struct Case {
  std::string name;
  Instance instance;
  std::optional<std::vector<int>> actual;
  std::shared_ptr<const VectorField> field;
};

// Cases are loaded inside the worker so a bad file fails only its own rows.
using CaseLoader = std::function<Case()>;

// Runs fn(0) .. fn(n - 1) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

struct SolveRecord {
  std::string instance;
  std::string mode;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  RouteSolution solution;
  std::optional<ScoreReport> score;
  VisualReport visual;
  bool valid = false;
  double wall_ms = 0.0;
  std::string route_json;
};

struct SolveParams {
  std::vector<Mode> modes;
  std::optional<Weights> weights;  // overrides each mode's default
  std::uint64_t seed = 1;
  int iters = kDefaultIterations;
};

// Records ordered by case, then by mode.
std::vector<SolveRecord> run_solve(const std::vector<CaseLoader>& cases, const SolveParams& params, int jobs);

struct SolveOutputs {
  std::string results_csv;
  std::string timings_csv;
  std::string summary_json;
  std::string summary_table;  // human-readable Mean/Std/Min/Median/Max per mode
};

SolveOutputs solve_outputs(const std::vector<SolveRecord>& records);

struct ParetoRecord {
  std::string instance;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double f1_max = 0.0;
  ParetoResult result;
  std::vector<std::string> routes;  // hyphen-joined stop ids per archive entry
  double wall_ms = 0.0;
};

struct ParetoParams {
  Weights weights = Weights::pareto();
  std::uint64_t seed = 1;
  int seeds = 1;
  int iters = kDefaultIterations;
  HbsOptions hbs;
  bool f1_max_nn = false;  // per-instance nearest-neighbor bound instead of hbs.f1_max
};

// Records ordered by case, then by seed.
std::vector<ParetoRecord> run_pareto(const std::vector<CaseLoader>& cases, const ParetoParams& params, int jobs);

struct ParetoOutputs {
  std::map<std::string, std::string> archives;  // relative path -> CSV
  std::map<std::string, std::string> fronts;    // relative path -> SVG
  std::string aggregate_json;
  std::string timings_csv;
};

ParetoOutputs pareto_outputs(const std::vector<ParetoRecord>& records);

// Wall-clock milliseconds since an arbitrary epoch.
double now_ms();

}  // namespace catsp::app
