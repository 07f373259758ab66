#pragma once

#include <cstddef>
#include <vector>

#include "beliefgrid/finite_mdp.hpp"
#include "beliefgrid/types.hpp"

namespace beliefgrid {

struct ValueFunction {
  std::vector<double> values;
  double residual = 0.0;     // last sup-norm change
  std::size_t iterations = 0;
};

/// Deterministic stationary policy on grid states.
struct GridPolicy {
  std::vector<std::size_t> actions;
};

struct Solution {
  ValueFunction value;
  GridPolicy policy;
};

/// One Bellman sweep: (TV)(i) = opt_a [c(i,a) + beta * sum_j p(j|i,a) V(j)],
/// opt = min for Minimize, max for Maximize. Shared-row models reuse the
/// per-action expectation across states.
ValueFunction bellman_backup(const GridModel& gm, const ValueFunction& v);

/// Iterates from V = 0 until beta * residual / (1 - beta) <= tolerance,
/// certifying ||V - V*||_inf <= tolerance. Ties in the final greedy step go
/// to the lowest action index. Throws IterationCapError past the cap.
Solution value_iteration(const GridModel& gm, double tolerance = 1e-9,
                         std::size_t iteration_cap = 1000000);

/// Piecewise-constant extension of a grid policy: belief -> action of its
/// cell. Holds pointers; the grid must outlive the extension.
struct ExtendedLatticePolicy {
  const LatticeGrid* grid = nullptr;
  GridPolicy policy;

  std::size_t action(const BeliefVector& z) const {
    return policy.actions[grid->assign(z)];
  }
};

/// Extension over interval-reciprocal beliefs, with optional one-step
/// lookahead data for point-mass beliefs (which live outside the codebook:
/// the process starts at one and never returns).
struct ExtendedMeasurementPolicy {
  const MeasurementGrid* grid = nullptr;
  GridPolicy policy;
  // Per action: expected grid value under the shared transition row, for the
  // lookahead. Empty when constructed without a solution.
  std::vector<double> lookahead;
  double discount = 0.0;
  Objective objective = Objective::Maximize;

  std::size_t action(const IntervalReciprocalBelief& z) const {
    return policy.actions[grid->assign(z)];
  }
  /// argopt_a [cost(delta_x, a) + beta * lookahead(a)]; requires lookahead.
  std::size_t dirac_action(const PopulationModel& model, double x) const;
  /// The optimized one-step value at the point mass.
  double dirac_value(const PopulationModel& model, double x) const;
};

ExtendedLatticePolicy extend_policy(const GridPolicy& policy,
                                    const LatticeGrid& grid);
ExtendedMeasurementPolicy extend_policy(const GridPolicy& policy,
                                        const MeasurementGrid& grid);
/// Attaches lookahead data from a solved model.
ExtendedMeasurementPolicy extend_policy(const Solution& sol,
                                        const GridModel& gm,
                                        const MeasurementGrid& grid);

}  // namespace beliefgrid
