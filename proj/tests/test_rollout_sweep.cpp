#include <cmath>
#include <string>
#include <vector>

#include "beliefgrid/finite_mdp.hpp"
#include "beliefgrid/model.hpp"
#include "beliefgrid/rollout.hpp"
#include "beliefgrid/solver.hpp"
#include "beliefgrid/sweep.hpp"
#include "beliefgrid/types.hpp"
#include "doctest.h"

using namespace beliefgrid;

namespace {
struct RepairSetup {
  FinitePomdp model;
  LatticeGrid grid;
  Solution sol;
  ExtendedLatticePolicy policy;

  explicit RepairSetup(long long n) : model(machine_repair({})),
                                      grid(build_grid(model, n)) {
    sol = value_iteration(build_finite_mdp(model, grid), 1e-10);
    policy = extend_policy(sol.policy, grid);
  }
};
}  // namespace

TEST_CASE("auto horizon hits the truncation target") {
  // smallest T with 0.3^T * 3 / 0.7 <= 1e-9
  CHECK(auto_horizon(0.3, 3.0, 1e-9) == 19);
  CHECK(auto_horizon(0.2, 7.345, 1e-9) == 15);
  // one step earlier the bound still exceeds the cut
  const double at18 = std::pow(0.3, 18.0) * 3.0 / 0.7;
  CHECK(at18 > 1e-9);
}

TEST_CASE("zero-cost models roll out to zero") {
  FinitePomdp m = machine_repair({});
  for (auto& row : m.cost) row = {0.0, 0.0};
  const LatticeGrid g = build_grid(m, 4);
  const Solution sol = value_iteration(build_finite_mdp(m, g), 1e-10);
  const ExtendedLatticePolicy pi = extend_policy(sol.policy, g);

  RolloutConfig cfg;
  cfg.horizon = 10;
  cfg.replications = 20;
  cfg.seed = 3;
  cfg.initial_state = 1;
  const RolloutReport rep = rollout(m, pi, cfg);
  CHECK(rep.mean == 0.0);
  CHECK(rep.stderr_mean == 0.0);
  CHECK(rep.truncation_bound == 0.0);
}

TEST_CASE("deterministic chains accumulate the exact series") {
  // two frozen states, perfect observation, unit cost everywhere: every
  // replication pays 1 + 1/2 + 1/4 + 1/8 exactly
  FinitePomdp m;
  m.num_states = 2;
  m.num_actions = 1;
  m.num_obs = 2;
  m.transition = {{{1.0, 0.0}}, {{0.0, 1.0}}};
  m.channel = {{1.0, 0.0}, {0.0, 1.0}};
  m.cost = {{1.0}, {1.0}};
  m.discount = 0.5;
  m.validate();

  const LatticeGrid g = build_grid(m, 1);
  const Solution sol = value_iteration(build_finite_mdp(m, g), 1e-10);
  const ExtendedLatticePolicy pi = extend_policy(sol.policy, g);

  RolloutConfig cfg;
  cfg.horizon = 4;
  cfg.replications = 7;
  cfg.seed = 1;
  cfg.initial_state = 0;
  const RolloutReport rep = rollout(m, pi, cfg);
  CHECK(rep.mean == doctest::Approx(1.875).epsilon(1e-15));
  CHECK(rep.stderr_mean == 0.0);
  CHECK(rep.truncation_bound ==
        doctest::Approx(std::pow(0.5, 4.0) * 1.0 / 0.5).epsilon(1e-15));
  CHECK(rep.horizon == 4);
  CHECK(rep.replications == 7);
}

TEST_CASE("reports are reproducible and seed-sensitive") {
  const RepairSetup s(10);
  RolloutConfig cfg;
  cfg.horizon = 15;
  cfg.replications = 200;
  cfg.seed = 42;
  cfg.initial_state = 1;

  const RolloutReport r1 = rollout(s.model, s.policy, cfg);
  const RolloutReport r2 = rollout(s.model, s.policy, cfg);
  CHECK(r1.mean == r2.mean);
  CHECK(r1.stderr_mean == r2.stderr_mean);

  cfg.seed = 43;
  const RolloutReport r3 = rollout(s.model, s.policy, cfg);
  CHECK(r1.mean != r3.mean);

  cfg.seed = 42;
  cfg.initial_state = 0;
  const RolloutReport broken_start = rollout(s.model, s.policy, cfg);
  CHECK(broken_start.mean > r1.mean);  // starting broken costs more
}

TEST_CASE("standard error scales like the square root of effort") {
  const RepairSetup s(20);
  RolloutConfig cfg;
  cfg.horizon = 19;
  cfg.seed = 7;
  cfg.initial_state = 1;

  cfg.replications = 1500;
  const double se1 = rollout(s.model, s.policy, cfg).stderr_mean;
  cfg.replications = 6000;
  const double se4 = rollout(s.model, s.policy, cfg).stderr_mean;
  CHECK(se1 > 0.0);
  // quadrupling replications should roughly halve the error
  CHECK(se4 / se1 > 0.35);
  CHECK(se4 / se1 < 0.65);
}

TEST_CASE("population rollout runs the quadratic reward") {
  const PopulationModel m = population_growth(1.0, 0.5, 0.2, 20);
  const MeasurementGrid g = build_grid(m, 29);
  const GridModel gm = build_finite_mdp(m, g);
  const Solution sol = value_iteration(gm, 1e-9);
  const ExtendedMeasurementPolicy pi = extend_policy(sol, gm, g);

  RolloutConfig cfg;
  cfg.horizon = 15;
  cfg.replications = 60;
  cfg.seed = 42;
  cfg.initial_point = 2.0;
  const RolloutReport rep = rollout(m, pi, cfg);
  CHECK(std::isfinite(rep.mean));
  CHECK(rep.mean > 0.0);
  CHECK(rep.discount == 0.2);

  // reproducible too
  const RolloutReport again = rollout(m, pi, cfg);
  CHECK(rep.mean == again.mean);
}

TEST_CASE("sweep rows line up with the direct pipeline") {
  const FinitePomdp m = machine_repair({});
  SweepOptions opt;
  opt.tolerance = 1e-10;  // matches RepairSetup, so the runs are identical
  opt.initial_state = 1;
  const SweepResult res = sweep(m, {10}, opt);
  REQUIRE(res.rows.size() == 1);
  const SweepRow& row = res.rows[0];
  CHECK_FALSE(row.failed);
  CHECK(row.n == 10);
  CHECK(row.grid_size == 11);

  const RepairSetup s(10);
  BeliefVector init;
  init.w = {0.0, 1.0};
  CHECK(row.value_at_init ==
        doctest::Approx(s.sol.value.values[s.grid.assign(init)])
            .epsilon(1e-12));
}

TEST_CASE("sweep resolutions must increase strictly") {
  const FinitePomdp m = machine_repair({});
  SweepOptions opt;
  CHECK_THROWS_AS(sweep(m, {10, 10}, opt), ConfigError);
  CHECK_THROWS_AS(sweep(m, {20, 10}, opt), ConfigError);
  CHECK_THROWS_AS(sweep(m, {}, opt), ConfigError);
}

TEST_CASE("a failing resolution is recorded, not fatal") {
  const PopulationModel m = population_growth(1.0, 0.5, 0.2, 20);
  SweepOptions opt;
  opt.initial_point = 2.0;
  // 2 levels cannot cover every action's observation band
  const SweepResult res = sweep(m, {2, 29}, opt);
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].failed);
  CHECK_FALSE(res.rows[0].error.empty());
  CHECK_FALSE(res.rows[1].failed);
  CHECK(res.rows[1].value_at_init > 0.0);

  // failed rows stay out of the emitters
  const std::string csv = sweep_csv(res);
  CHECK(csv.find("\n2,") == std::string::npos);
  CHECK(csv.find("29,") != std::string::npos);
  const std::string plot = sweep_plot(res);
  CHECK(plot.find("\n2 ") == std::string::npos);
}

TEST_CASE("parallel sweeps match serial sweeps field by field") {
  const FinitePomdp m = machine_repair({});
  SweepOptions serial;
  serial.initial_state = 1;
  SweepOptions parallel = serial;
  parallel.jobs = 4;

  const SweepResult a = sweep(m, {10, 20, 30, 40}, serial);
  const SweepResult b = sweep(m, {10, 20, 30, 40}, parallel);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].n == b.rows[i].n);
    CHECK(a.rows[i].value_at_init == b.rows[i].value_at_init);
    CHECK(a.rows[i].vi_iterations == b.rows[i].vi_iterations);
    CHECK(a.rows[i].residual == b.rows[i].residual);
  }
}

TEST_CASE("csv and plot formats") {
  const FinitePomdp m = machine_repair({});
  SweepOptions opt;
  opt.initial_state = 1;
  const SweepResult res = sweep(m, {10, 20}, opt);

  const std::string csv = sweep_csv(res);
  CHECK(csv.rfind("n,grid_size,value_at_init,vi_iterations,residual,wall_ms\n",
                  0) == 0);
  std::size_t lines = 0;
  for (const char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 3);  // header + 2 rows

  const std::string plot = sweep_plot(res);
  CHECK(plot.rfind("# n value\n", 0) == 0);
  CHECK(plot.find("\n10 ") != std::string::npos);
}
