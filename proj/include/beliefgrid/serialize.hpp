#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "beliefgrid/belief.hpp"
#include "beliefgrid/finite_mdp.hpp"
#include "beliefgrid/rollout.hpp"
#include "beliefgrid/solver.hpp"

namespace beliefgrid {

/// Shortest decimal form that parses back to the same double; deterministic,
/// so emitted files are byte-stable across reruns.
std::string format_real(double x);

/// One belief per line, replayable:
///   "simplex w0 w1 ..."            lattice beliefs
///   "interval lower upper action obs"  interval-reciprocal beliefs
std::string belief_record(const BeliefVector& z);
std::string belief_record(const IntervalReciprocalBelief& z);
std::string grid_records(const LatticeGrid& grid);
std::string grid_records(const MeasurementGrid& grid);

struct SolutionFile {
  Solution sol;
  std::string model_kind;
  long long n = 0;
  std::size_t grid_size = 0;
  double value_at_init = 0.0;
  std::string config_echo;
};

std::string solution_to_json(const SolutionFile& file);
/// Throws ConfigError on malformed or wrong-format input.
SolutionFile solution_from_json(const std::string& text);

/// Sparse dump: dimensions, objective, COO transition quadruples
/// [i, a, j, p] (a single shared block of i = 0 rows when rows are
/// action-factored), dense cost table, one belief record per state.
std::string grid_model_to_json(const GridModel& gm,
                               const std::vector<std::string>& state_records);

std::string rollout_to_json(const RolloutReport& rep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace beliefgrid
