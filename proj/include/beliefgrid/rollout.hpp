#pragma once

#include <cstddef>
#include <cstdint>

#include "beliefgrid/model.hpp"
#include "beliefgrid/solver.hpp"

namespace beliefgrid {

struct RolloutConfig {
  std::size_t horizon = 1;
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  std::size_t initial_state = 0;  // finite models: the known starting state
  double initial_point = 0.0;     // population model: the known starting level
};

struct RolloutReport {
  double mean = 0.0;
  double stderr_mean = 0.0;
  double truncation_bound = 0.0;  // beta^T * maxcost / (1 - beta)
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  double discount = 0.0;
};

/// Monte Carlo value of the extended policy on the original model: simulate
/// hidden states and observations, track the belief with the exact filter,
/// accumulate the discounted true one-stage costs. Replication r draws from
/// substream r, so reports are reproducible and extendable.
RolloutReport rollout(const FinitePomdp& model,
                      const ExtendedLatticePolicy& policy,
                      const RolloutConfig& cfg);
RolloutReport rollout(const PopulationModel& model,
                      const ExtendedMeasurementPolicy& policy,
                      const RolloutConfig& cfg);

/// Smallest horizon whose truncation bound drops below cut.
std::size_t auto_horizon(double discount, double max_abs_cost, double cut);

}  // namespace beliefgrid
