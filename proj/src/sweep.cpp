#include "beliefgrid/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <thread>

#include "beliefgrid/serialize.hpp"
#include "beliefgrid/solver.hpp"

namespace beliefgrid {

namespace {

void check_ns(const std::vector<long long>& ns) {
  if (ns.empty()) throw ConfigError("sweep: resolution list is empty");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw ConfigError("sweep: resolutions must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw ConfigError("sweep: resolutions must be strictly increasing");
  }
}

/// Runs row_fn(i) over all indices with opt.jobs workers; each row owns its
/// slot, so the result is independent of scheduling.
void run_rows(std::size_t count, std::size_t jobs,
              const std::function<void(std::size_t)>& row_fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) row_fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      row_fn(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_threads = std::min(jobs, count);
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

template <typename BuildSolveRead>
SweepResult sweep_impl(const std::vector<long long>& ns, std::size_t jobs,
                       BuildSolveRead&& one_row) {
  check_ns(ns);
  SweepResult result;
  result.rows.resize(ns.size());
  run_rows(ns.size(), jobs, [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.n = ns[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      one_row(ns[i], row);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  });
  return result;
}

}  // namespace

SweepResult sweep(const FinitePomdp& model, const std::vector<long long>& ns,
                  const SweepOptions& opt) {
  model.validate();
  if (opt.initial_state >= model.num_states)
    throw ConfigError("sweep: initial state out of range");
  return sweep_impl(ns, opt.jobs, [&](long long n, SweepRow& row) {
    const LatticeGrid grid = build_grid(model, n);
    const GridModel gm = build_finite_mdp(model, grid, opt.weighting);
    const Solution sol = value_iteration(gm, opt.tolerance, opt.iteration_cap);
    BeliefVector init;
    init.w.assign(model.num_states, 0.0);
    init.w[opt.initial_state] = 1.0;
    row.grid_size = grid.size();
    row.value_at_init = sol.value.values[grid.assign(init)];
    row.vi_iterations = sol.value.iterations;
    row.residual = sol.value.residual;
  });
}

SweepResult sweep(const PopulationModel& model,
                  const std::vector<long long>& ns, const SweepOptions& opt) {
  model.validate();
  return sweep_impl(ns, opt.jobs, [&](long long n, SweepRow& row) {
    const MeasurementGrid grid = build_grid(model, std::size_t(n));
    const GridModel gm = build_finite_mdp(model, grid, opt.weighting);
    const Solution sol = value_iteration(gm, opt.tolerance, opt.iteration_cap);
    const ExtendedMeasurementPolicy ext = extend_policy(sol, gm, grid);
    row.grid_size = grid.size();
    row.value_at_init = ext.dirac_value(model, opt.initial_point);
    row.vi_iterations = sol.value.iterations;
    row.residual = sol.value.residual;
  });
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "n,grid_size,value_at_init,vi_iterations,residual,wall_ms\n";
  for (const SweepRow& row : result.rows) {
    if (row.failed) continue;
    char head[128];
    std::snprintf(head, sizeof(head), "%lld,%zu,", row.n, row.grid_size);
    out += head;
    out += format_real(row.value_at_init);
    std::snprintf(head, sizeof(head), ",%zu,", row.vi_iterations);
    out += head;
    out += format_real(row.residual);
    out += ',';
    out += format_real(row.wall_ms);
    out += '\n';
  }
  return out;
}

std::string sweep_plot(const SweepResult& result) {
  std::string out = "# n value\n";
  for (const SweepRow& row : result.rows) {
    if (row.failed) continue;
    out += std::to_string(row.n);
    out += ' ';
    out += format_real(row.value_at_init);
    out += '\n';
  }
  return out;
}

}  // namespace beliefgrid
