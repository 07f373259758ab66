#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beliefgrid/finite_mdp.hpp"
#include "beliefgrid/model.hpp"

namespace beliefgrid {

/**
 * Run description parsed from the INI-style config format documented in
 * docs/formats.md. parse -> emit -> parse is a fixed point: emission uses a
 * canonical section/key order and shortest round-trip number form.
 */
struct RunConfig {
  // [model]
  std::string kind = "machine-repair";  // or "population"
  MachineRepairParams repair;
  double pop_lambda = 1.0;
  double pop_tau = 0.5;
  double pop_discount = 0.2;
  std::string utility = "quadratic";

  // [quantization]
  std::vector<long long> n_list;
  SimplexNorm metric = SimplexNorm::L2;
  WeightingMeasure weighting;
  std::size_t action_levels = 20;  // population action-net size
  double theta = 0.0;              // <= 0 selects the default margin

  // [solver]
  double tolerance = 1e-9;
  std::size_t iteration_cap = 1000000;

  // [eval]
  std::uint64_t seed = 1;
  std::size_t replications = 10000;
  long long horizon = 0;  // 0 = auto (truncation bound below 1e-9)
  std::size_t initial_state = 1;
  double initial_point = 2.0;

  // [output]
  std::string out_dir = ".";

  bool is_population() const { return kind == "population"; }
  FinitePomdp make_finite() const;
  PopulationModel make_population() const;
  /// The configured horizon, or the auto horizon computed from the model's
  /// discount and cost bound.
  std::size_t resolved_horizon() const;
};

/// Throws ConfigError with "line N" / field diagnostics.
RunConfig parse_run_config(const std::string& text);
std::string emit_run_config(const RunConfig& cfg);

}  // namespace beliefgrid
