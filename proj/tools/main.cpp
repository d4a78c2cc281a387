#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catsp/errors.hpp"
#include "catsp_app/commands.hpp"

namespace app = catsp::app;

namespace {

void add_input_options(CLI::App* cmd, app::InputOptions& in) {
  cmd->add_option("instances", in.instances, "Instance files or directories of *.instance.json")->required();
  cmd->add_option("--history", in.history, "History file used for every instance");
  cmd->add_option("--field", in.field, "Mined field file used for every instance");
  cmd->add_option("--beta", in.beta, "Step vector length in meters");
  cmd->add_option("--alpha", in.alpha, "Heading decay per meter");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Bi-objective clustered asymmetric TSP toolkit"};
  cli.require_subcommand(1);

  const std::uint64_t default_seed = app::env_seed(1);

  app::GenOptions gen;
  gen.seed = default_seed;
  auto* c_gen = cli.add_subcommand("gen", "Generate synthetic instances with driver histories");
  c_gen->add_option("--seed", gen.seed, "First seed (CATSP_SEED fallback)");
  c_gen->add_option("--count", gen.count, "Number of instances, seeds seed..seed+count-1");
  c_gen->add_option("--zones", gen.zones, "Zones per instance");
  c_gen->add_option("--stops-per-zone", gen.stops_per_zone, "Stops per zone");
  c_gen->add_option("--policy", gen.policy, "Driver policy: sweep or nearest");
  c_gen->add_option("--layout", gen.layout, "Zone layout: band or disk");
  c_gen->add_option("--histories", gen.histories, "Histories per instance");
  c_gen->add_option("--out", gen.out, "Output directory");

  app::MineOptions mine;
  auto* c_mine = cli.add_subcommand("mine", "Build the history vector field");
  c_mine->add_option("histories", mine.histories, "History files")->required();
  c_mine->add_option("--beta", mine.beta, "Step vector length in meters");
  c_mine->add_option("--alpha", mine.alpha, "Heading decay per meter");
  c_mine->add_option("--out", mine.out, "Field file to write");

  app::SolveOptions solve;
  solve.seed = default_seed;
  auto* c_solve = cli.add_subcommand("solve", "Solve instances under one or more modes and score them");
  add_input_options(c_solve, solve.input);
  c_solve->add_option("--mode", solve.modes, "base, dm, visual:adc|cdc|nc|be (repeatable)")->delimiter(',');
  c_solve->add_option("--weights", solve.weights, "theta1,theta2,theta3,theta4");
  c_solve->add_option("--seed", solve.seed, "Solver seed (CATSP_SEED fallback)");
  c_solve->add_option("--iters", solve.iters, "GRASP iterations L");
  c_solve->add_option("--jobs", solve.jobs, "Instances solved in parallel");
  c_solve->add_flag("--dump-m", solve.dump_m, "Write the zone time matrix of each instance");
  c_solve->add_option("--out", solve.out, "Output directory");

  app::ParetoOptions pareto;
  pareto.seed = default_seed;
  auto* c_pareto = cli.add_subcommand("pareto", "Bi-objective solve with heuristic box splitting");
  add_input_options(c_pareto, pareto.input);
  c_pareto->add_option("--weights", pareto.weights, "theta1,theta2,theta3,theta4 (f2 uses theta2..4)");
  c_pareto->add_option("--seed", pareto.seed, "First seed (CATSP_SEED fallback)");
  c_pareto->add_option("--seeds", pareto.seeds, "Runs per instance");
  c_pareto->add_option("--iters", pareto.iters, "GRASP iterations per ROH call");
  c_pareto->add_option("--n-max", pareto.n_max, "Maximum box splitting iterations");
  c_pareto->add_option("--f1-max", pareto.f1_max, "Travel time bound in seconds, or nn");
  c_pareto->add_option("--f2-min", pareto.f2_min, "Lower f2 bound");
  c_pareto->add_option("--delta-min", pareto.delta_min, "Minimal f2 extent of a box");
  c_pareto->add_option("--jobs", pareto.jobs, "Instances solved in parallel");
  c_pareto->add_option("--out", pareto.out, "Output directory");

  app::ScoreOptions score;
  auto* c_score = cli.add_subcommand("score", "Score a route against the executed route");
  c_score->add_option("instance", score.instance, "Instance file")->required();
  c_score->add_option("route", score.route, "Predicted route file")->required();
  c_score->add_option("actual", score.actual, "Executed route file")->required();

  app::BenchOptions bench;
  bench.seed = default_seed;
  auto* c_bench = cli.add_subcommand("bench", "Run a synthetic experiment suite end to end");
  c_bench->add_option("--seed", bench.seed, "First instance seed and solver seed (CATSP_SEED fallback)");
  c_bench->add_option("--count", bench.count, "Number of instances");
  c_bench->add_option("--zones", bench.zones, "Zones per instance");
  c_bench->add_option("--stops-per-zone", bench.stops_per_zone, "Stops per zone");
  c_bench->add_option("--policy", bench.policy, "Driver policy: sweep or nearest");
  c_bench->add_option("--layout", bench.layout, "Zone layout: band or disk");
  c_bench->add_option("--histories", bench.histories, "Histories per instance");
  c_bench->add_option("--mode", bench.modes, "Modes, pareto included (repeatable)")->delimiter(',');
  c_bench->add_option("--weights", bench.weights, "theta1,theta2,theta3,theta4");
  c_bench->add_option("--iters", bench.iters, "GRASP iterations L");
  c_bench->add_option("--pareto-seeds", bench.pareto_seeds, "Pareto runs per instance");
  c_bench->add_option("--n-max", bench.n_max, "Maximum box splitting iterations");
  c_bench->add_option("--f1-max", bench.f1_max, "Travel time bound in seconds, or nn");
  c_bench->add_option("--delta-min", bench.delta_min, "Minimal f2 extent of a box");
  c_bench->add_option("--jobs", bench.jobs, "Instances solved in parallel");
  c_bench->add_option("--out", bench.out, "Output directory");

  app::ImportAmazonOptions amazon;
  auto* c_amazon = cli.add_subcommand("import-amazon", "Convert an Amazon challenge directory");
  c_amazon->add_option("dir", amazon.dir, "Directory with route_data.json, travel_times.json, actual_sequences.json")
      ->required();
  c_amazon->add_option("--limit", amazon.limit, "Routes to import, 0 for all");
  c_amazon->add_option("--histories", amazon.histories, "Same-station routes kept as history");
  c_amazon->add_option("--out", amazon.out, "Output directory");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kOk : app::kUsageError;
  }

  app::RunInfo info;
  info.argv.assign(argv + 1, argv + argc);
  try {
    if (*c_gen) return info.command = "gen", app::cmd_gen(gen, info, std::cout);
    if (*c_mine) return info.command = "mine", app::cmd_mine(mine, info, std::cout);
    if (*c_solve) return info.command = "solve", app::cmd_solve(solve, info, std::cout);
    if (*c_pareto) return info.command = "pareto", app::cmd_pareto(pareto, info, std::cout);
    if (*c_score) return info.command = "score", app::cmd_score(score, info, std::cout);
    if (*c_bench) return info.command = "bench", app::cmd_bench(bench, info, std::cout);
    if (*c_amazon) return info.command = "import-amazon", app::cmd_import_amazon(amazon, info, std::cout);
  } catch (const app::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return app::kUsageError;
  } catch (const catsp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return app::kUsageError;
  }
  return app::kUsageError;
}
