#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catsp/grasp.hpp"
#include "catsp/history.hpp"
#include "catsp/pareto.hpp"
#include "catsp/synthetic.hpp"

namespace catsp::app {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kPartialFailure = 1, kUsageError = 2 };

// Bad invocation or unreadable/unwritable path; maps to kUsageError.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a command needs to describe itself in manifest.json.
struct RunInfo {
  std::string command;
  std::vector<std::string> argv;
};

struct GenOptions {
  std::uint64_t seed = 1;
  int count = 1;
  int zones = 3;
  int stops_per_zone = 4;
  std::string policy = "sweep";
  std::string layout = "band";
  int histories = kSyntheticHistories;
  fs::path out = "out";
};

struct MineOptions {
  std::vector<fs::path> histories;
  double beta = kDefaultBeta;
  double alpha = kDefaultAlpha;
  fs::path out = "field.json";
};

// Inputs shared by solve and pareto. Each instance file NAME.instance.json
// may have NAME.history.json and NAME.actual.json next to it; explicit
// --history / --field apply to every instance instead.
struct InputOptions {
  std::vector<fs::path> instances;  // files or directories
  std::optional<fs::path> history;
  std::optional<fs::path> field;
  double beta = kDefaultBeta;
  double alpha = kDefaultAlpha;
};

struct SolveOptions {
  InputOptions input;
  std::vector<std::string> modes{"base", "dm"};
  std::optional<std::string> weights;
  std::uint64_t seed = 1;
  int iters = kDefaultIterations;
  int jobs = 1;
  bool dump_m = false;
  fs::path out = "out";
};

struct ParetoOptions {
  InputOptions input;
  std::optional<std::string> weights;
  std::uint64_t seed = 1;
  int seeds = 1;  // runs per instance, seeds seed .. seed + seeds - 1
  int iters = kDefaultIterations;
  int n_max = kDefaultNMax;
  std::string f1_max = "86400";  // seconds or "nn"
  double f2_min = kDefaultF2Min;
  double delta_min = kDefaultDeltaMin;
  int jobs = 1;
  fs::path out = "out";
};

struct ScoreOptions {
  fs::path instance;
  fs::path route;
  fs::path actual;
};

// Synthetic suite run end to end in memory: generation, mining, every
// requested mode. "pareto" in `modes` runs the bi-objective solver too.
struct BenchOptions {
  std::uint64_t seed = 1;
  int count = 100;
  int zones = 10;
  int stops_per_zone = 3;
  std::string policy = "sweep";
  std::string layout = "band";
  int histories = kSyntheticHistories;
  std::vector<std::string> modes{"base", "dm", "visual:adc", "visual:cdc", "visual:nc", "visual:be"};
  std::optional<std::string> weights;
  int iters = kDefaultIterations;
  int pareto_seeds = 10;
  int n_max = kDefaultNMax;
  std::string f1_max = "86400";
  double delta_min = kDefaultDeltaMin;
  int jobs = 1;
  fs::path out = "out";
};

struct ImportAmazonOptions {
  fs::path dir;
  std::size_t limit = 0;
  std::size_t histories = kSyntheticHistories;
  fs::path out = "out";
};

int cmd_gen(const GenOptions& opt, const RunInfo& info, std::ostream& log);
int cmd_mine(const MineOptions& opt, const RunInfo& info, std::ostream& log);
int cmd_solve(const SolveOptions& opt, const RunInfo& info, std::ostream& log);
int cmd_pareto(const ParetoOptions& opt, const RunInfo& info, std::ostream& log);
int cmd_score(const ScoreOptions& opt, const RunInfo& info, std::ostream& log);
int cmd_bench(const BenchOptions& opt, const RunInfo& info, std::ostream& log);
int cmd_import_amazon(const ImportAmazonOptions& opt, const RunInfo& info, std::ostream& log);

// Instance files named by `paths`: files as given, directories expanded to
// their *.instance.json entries in name order. Throws UsageError for
// missing paths or when nothing matches.
std::vector<fs::path> discover_instances(const std::vector<fs::path>& paths);

// Seed from CATSP_SEED when set and parseable, else `fallback`.
std::uint64_t env_seed(std::uint64_t fallback);

}  // namespace catsp::app
