#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beliefgrid/config.hpp"
#include "beliefgrid/finite_mdp.hpp"
#include "beliefgrid/rollout.hpp"
#include "beliefgrid/serialize.hpp"
#include "beliefgrid/solver.hpp"
#include "beliefgrid/sweep.hpp"

namespace bg = beliefgrid;
namespace fs = std::filesystem;

namespace {

struct CmdArgs {
  std::string config;
  std::string out;
  std::string solution;
  std::string name;
  long long n = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  CLI::Option* out_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* tol_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_config_flags(CLI::App* cmd, CmdArgs& args, bool with_solver_flags) {
  cmd->add_option("--config", args.config, "run config file (INI format)")
      ->required();
  args.out_opt =
      cmd->add_option("--out", args.out, "output directory (overrides config)");
  args.seed_opt =
      cmd->add_option("--seed", args.seed, "RNG seed (overrides config)");
  if (with_solver_flags) {
    args.n_opt = cmd->add_option(
        "--n", args.n, "grid resolution (overrides the config n_list)");
    args.tol_opt = cmd->add_option("--tolerance", args.tolerance,
                                   "solver tolerance (overrides config)");
  }
}

bg::RunConfig load_config(const CmdArgs& args) {
  bg::RunConfig cfg = bg::parse_run_config(bg::read_text_file(args.config));
  if (args.n_opt && args.n_opt->count()) {
    if (args.n < 1) throw bg::ConfigError("--n must be >= 1");
    cfg.n_list = {args.n};
  }
  if (args.tol_opt && args.tol_opt->count()) {
    if (!(args.tolerance > 0.0))
      throw bg::ConfigError("--tolerance must be positive");
    cfg.tolerance = args.tolerance;
  }
  if (args.seed_opt && args.seed_opt->count()) cfg.seed = args.seed;
  if (args.out_opt && args.out_opt->count()) cfg.out_dir = args.out;
  return cfg;
}

void write_out(const bg::RunConfig& cfg, const std::string& name,
               const std::string& content) {
  fs::create_directories(cfg.out_dir);
  const std::string path = (fs::path(cfg.out_dir) / name).string();
  bg::write_text_file(path, content);
  std::cout << "wrote " << path << "\n";
}

int cmd_solve(const bg::RunConfig& cfg) {
  // A multi-resolution list belongs to sweep; solve takes its finest entry.
  const long long n = cfg.n_list.back();
  bg::SolutionFile file;
  file.model_kind = cfg.kind;
  file.n = n;
  file.config_echo = bg::emit_run_config(cfg);

  bg::GridModel gm;
  std::vector<std::string> records;
  if (cfg.is_population()) {
    const bg::PopulationModel model = cfg.make_population();
    const bg::MeasurementGrid grid = bg::build_grid(model, std::size_t(n));
    gm = bg::build_finite_mdp(model, grid, cfg.weighting);
    file.sol = bg::value_iteration(gm, cfg.tolerance, cfg.iteration_cap);
    file.grid_size = grid.size();
    file.value_at_init =
        bg::extend_policy(file.sol, gm, grid).dirac_value(model,
                                                          cfg.initial_point);
    records.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      records.push_back(bg::belief_record(grid.quantizer.code_belief(i)));
  } else {
    const bg::FinitePomdp model = cfg.make_finite();
    const bg::LatticeGrid grid = bg::build_grid(model, n, cfg.metric);
    gm = bg::build_finite_mdp(model, grid, cfg.weighting);
    file.sol = bg::value_iteration(gm, cfg.tolerance, cfg.iteration_cap);
    file.grid_size = grid.size();
    bg::BeliefVector init;
    init.w.assign(model.num_states, 0.0);
    init.w[cfg.initial_state] = 1.0;
    file.value_at_init = file.sol.value.values[grid.assign(init)];
    records.reserve(grid.size());
    for (const auto& z : grid.points) records.push_back(bg::belief_record(z));
  }

  write_out(cfg, "solution.json", bg::solution_to_json(file));
  write_out(cfg, "model.json", bg::grid_model_to_json(gm, records));
  std::string grid_txt;
  for (const auto& r : records) {
    grid_txt += r;
    grid_txt += '\n';
  }
  write_out(cfg, "grid.txt", grid_txt);
  std::cout << "solved " << cfg.kind << " n=" << n
            << " grid=" << file.grid_size
            << " value_at_init=" << bg::format_real(file.value_at_init)
            << " iterations=" << file.sol.value.iterations
            << " residual=" << bg::format_real(file.sol.value.residual)
            << "\n";
  return 0;
}

int cmd_sweep(const bg::RunConfig& cfg, std::size_t jobs) {
  bg::SweepOptions opt;
  opt.tolerance = cfg.tolerance;
  opt.iteration_cap = cfg.iteration_cap;
  opt.weighting = cfg.weighting;
  opt.jobs = jobs;
  opt.initial_state = cfg.initial_state;
  opt.initial_point = cfg.initial_point;

  bg::SweepResult result;
  if (cfg.is_population()) {
    const bg::PopulationModel model = cfg.make_population();
    result = bg::sweep(model, cfg.n_list, opt);
  } else {
    const bg::FinitePomdp model = cfg.make_finite();
    result = bg::sweep(model, cfg.n_list, opt);
  }

  std::size_t failed = 0;
  for (const auto& row : result.rows) {
    if (!row.failed) continue;
    ++failed;
    std::cerr << "n=" << row.n << " failed: " << row.error << "\n";
  }
  if (failed == result.rows.size())
    throw bg::NumericError("every sweep resolution failed");

  write_out(cfg, "sweep.csv", bg::sweep_csv(result));
  write_out(cfg, "sweep.dat", bg::sweep_plot(result));
  std::cout << "swept " << (result.rows.size() - failed) << "/"
            << result.rows.size() << " resolutions\n";
  return 0;
}

int cmd_simulate(const bg::RunConfig& cfg, const std::string& solution_path) {
  const bg::SolutionFile file =
      bg::solution_from_json(bg::read_text_file(solution_path));
  if (file.model_kind != cfg.kind)
    throw bg::ConfigError("solution was produced for '" + file.model_kind +
                          "' but the config describes '" + cfg.kind + "'");

  bg::RolloutConfig rc;
  rc.horizon = cfg.resolved_horizon();
  rc.replications = cfg.replications;
  rc.seed = cfg.seed;
  rc.initial_state = cfg.initial_state;
  rc.initial_point = cfg.initial_point;

  bg::RolloutReport rep;
  if (cfg.is_population()) {
    const bg::PopulationModel model = cfg.make_population();
    const bg::MeasurementGrid grid =
        bg::build_grid(model, std::size_t(file.n));
    if (grid.size() != file.grid_size)
      throw bg::ConfigError("solution incompatible: grid has " +
                            std::to_string(grid.size()) +
                            " states, solution has " +
                            std::to_string(file.grid_size));
    const bg::GridModel gm = bg::build_finite_mdp(model, grid, cfg.weighting);
    const auto ext = bg::extend_policy(file.sol, gm, grid);
    rep = bg::rollout(model, ext, rc);
  } else {
    const bg::FinitePomdp model = cfg.make_finite();
    const bg::LatticeGrid grid = bg::build_grid(model, file.n, cfg.metric);
    if (grid.size() != file.grid_size)
      throw bg::ConfigError("solution incompatible: grid has " +
                            std::to_string(grid.size()) +
                            " states, solution has " +
                            std::to_string(file.grid_size));
    const auto ext = bg::extend_policy(file.sol.policy, grid);
    rep = bg::rollout(model, ext, rc);
  }

  write_out(cfg, "rollout.json", bg::rollout_to_json(rep));
  std::cout << "rollout mean=" << bg::format_real(rep.mean)
            << " stderr=" << bg::format_real(rep.stderr_mean)
            << " truncation=" << bg::format_real(rep.truncation_bound)
            << " reps=" << rep.replications << " horizon=" << rep.horizon
            << "\n";
  return 0;
}

int cmd_example(const std::string& name, const std::string& out_dir) {
  std::string text;
  if (name == "machine-repair") {
    text =
        "# Repair-or-wait model at the reference parameters.\n"
        "[model]\n"
        "kind = machine-repair\n"
        "epsilon = 0.17\n"
        "kappa = 0.9\n"
        "alpha = 0.9545\n"
        "repair_cost = 1\n"
        "downtime_cost = 2\n"
        "discount = 0.3\n"
        "\n"
        "[quantization]\n"
        "n_list = "
        "10,20,30,40,50,60,70,80,90,100,110,120,130,140,150,160,170,180,190,"
        "200\n"
        "metric = l2\n"
        "# Spread each cell's weight over 5 sample beliefs instead of its\n"
        "# grid point; see docs/formats.md for how this choice behaves.\n"
        "weighting = uniform\n"
        "samples = 5\n"
        "\n"
        "[solver]\n"
        "tolerance = 1e-9\n"
        "iteration_cap = 1000000\n"
        "\n"
        "[eval]\n"
        "seed = 42\n"
        "replications = 10000\n"
        "horizon = 30\n"
        "initial_state = 1\n"
        "\n"
        "[output]\n"
        "directory = out-machine-repair\n";
  } else if (name == "population") {
    text =
        "# Harvest-under-noise model at the reference parameters.\n"
        "[model]\n"
        "kind = population\n"
        "lambda = 1\n"
        "tau = 0.5\n"
        "discount = 0.2\n"
        "utility = quadratic\n"
        "\n"
        "[quantization]\n"
        "n_list = 29,45,58,90,116,180,232,360,464,720\n"
        "metric = l2\n"
        "weighting = dirac\n"
        "samples = 5\n"
        "action_levels = 20\n"
        "theta = 0\n"
        "\n"
        "[solver]\n"
        "tolerance = 1e-9\n"
        "iteration_cap = 1000000\n"
        "\n"
        "[eval]\n"
        "seed = 42\n"
        "replications = 10000\n"
        "horizon = auto\n"
        "initial_point = 2\n"
        "\n"
        "[output]\n"
        "directory = out-population\n";
  } else {
    throw bg::ConfigError("unknown example '" + name +
                          "'; available: machine-repair, population");
  }
  fs::create_directories(out_dir);
  const std::string path = (fs::path(out_dir) / (name + ".ini")).string();
  bg::write_text_file(path, text);
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_validate(const bg::RunConfig& cfg) {
  bg::AssumptionReport report;
  if (cfg.is_population())
    report = bg::validate_assumptions(cfg.make_population());
  else
    report = bg::validate_assumptions(cfg.make_finite());
  for (const auto& clause : report.clauses)
    std::cout << (clause.pass ? "[pass] " : "[FAIL] ") << clause.name << ": "
              << clause.detail << "\n";
  if (!report.all_pass()) {
    std::cerr << "model violates standing assumptions\n";
    return 2;
  }
  std::cout << "config and model assumptions hold\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite grid approximations for partially observed control"};
  app.require_subcommand(1);

  CmdArgs solve_args, sweep_args, sim_args, val_args;
  std::string example_name, example_out = ".";

  CLI::App* solve = app.add_subcommand(
      "solve", "build the grid model at one resolution and value-iterate");
  add_config_flags(solve, solve_args, true);

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "solve every resolution in n_list and emit CSV");
  add_config_flags(sweep_cmd, sweep_args, true);
  sweep_cmd->add_option("--jobs", sweep_args.jobs,
                        "concurrent resolutions (default 1)");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo rollout of a saved solution's policy");
  add_config_flags(simulate, sim_args, false);
  simulate->add_option("--solution", sim_args.solution, "solution.json path")
      ->required();

  CLI::App* example = app.add_subcommand(
      "example", "write a ready-to-run reference config");
  example->add_option("name", example_name, "machine-repair or population")
      ->required();
  example->add_option("--out", example_out, "output directory (default .)");

  CLI::App* validate = app.add_subcommand(
      "validate", "check the config and the standing model assumptions");
  add_config_flags(validate, val_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(load_config(solve_args));
    if (sweep_cmd->parsed())
      return cmd_sweep(load_config(sweep_args), sweep_args.jobs);
    if (simulate->parsed())
      return cmd_simulate(load_config(sim_args), sim_args.solution);
    if (example->parsed()) return cmd_example(example_name, example_out);
    if (validate->parsed()) return cmd_validate(load_config(val_args));
  } catch (const bg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const bg::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
