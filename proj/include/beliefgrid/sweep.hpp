#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "beliefgrid/finite_mdp.hpp"
#include "beliefgrid/model.hpp"

namespace beliefgrid {

struct SweepOptions {
  double tolerance = 1e-9;
  std::size_t iteration_cap = 1000000;
  WeightingMeasure weighting;
  std::size_t jobs = 1;
  std::size_t initial_state = 1;  // finite models: Dirac readout belief
  double initial_point = 2.0;     // population model: known starting level
};

struct SweepRow {
  long long n = 0;
  std::size_t grid_size = 0;
  double value_at_init = 0.0;
  std::size_t vi_iterations = 0;
  double residual = 0.0;
  double wall_ms = 0.0;
  bool failed = false;
  std::string error;
};

/// Rows by resolution, in input order (input must be strictly increasing).
/// A failing resolution is recorded with its diagnostic and the sweep moves
/// on; failed rows are kept out of the CSV emitters.
struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Per resolution: build grid, build finite model, value-iterate, read the
/// value at the cell holding the initial belief. Rows may be computed
/// concurrently (opt.jobs workers); output order is by n regardless.
SweepResult sweep(const FinitePomdp& model, const std::vector<long long>& ns,
                  const SweepOptions& opt);
/// Population readout: one-step lookahead value at the initial point mass,
/// which is the first belief the process actually visits.
SweepResult sweep(const PopulationModel& model,
                  const std::vector<long long>& ns, const SweepOptions& opt);

/// CSV with header n,grid_size,value_at_init,vi_iterations,residual,wall_ms.
/// Fully deterministic except the wall_ms column.
std::string sweep_csv(const SweepResult& result);
/// Two-column "n value" file, gnuplot-ready, deterministic.
std::string sweep_plot(const SweepResult& result);

}  // namespace beliefgrid
