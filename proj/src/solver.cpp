#include "beliefgrid/solver.hpp"

#include <cmath>
#include <string>

#include "beliefgrid/belief.hpp"

namespace beliefgrid {

namespace {

/// Per-action expectation of v under the shared row; only valid for
/// action-factored models.
std::vector<double> shared_expectations(const GridModel& gm,
                                        const std::vector<double>& v) {
  std::vector<double> w(gm.num_actions, 0.0);
  for (std::size_t a = 0; a < gm.num_actions; ++a) {
    double acc = 0.0;
    const auto& row = gm.transition[0][a];
    for (std::size_t j = 0; j < gm.num_states; ++j) acc += row[j] * v[j];
    w[a] = acc;
  }
  return w;
}

void backup_into(const GridModel& gm, const std::vector<double>& v,
                 std::vector<double>& out, GridPolicy* policy) {
  const bool maximize = gm.objective == Objective::Maximize;
  std::vector<double> shared;
  if (gm.action_factored) shared = shared_expectations(gm, v);

  for (std::size_t i = 0; i < gm.num_states; ++i) {
    double best = 0.0;
    std::size_t best_a = 0;
    for (std::size_t a = 0; a < gm.num_actions; ++a) {
      double exp_v;
      if (gm.action_factored) {
        exp_v = shared[a];
      } else {
        exp_v = 0.0;
        const auto& row = gm.transition[i][a];
        for (std::size_t j = 0; j < gm.num_states; ++j) exp_v += row[j] * v[j];
      }
      const double q = gm.cost[i][a] + gm.discount * exp_v;
      if (a == 0 || (maximize ? q > best : q < best)) {
        best = q;
        best_a = a;
      }
    }
    out[i] = best;
    if (policy) policy->actions[i] = best_a;
  }
}

}  // namespace

ValueFunction bellman_backup(const GridModel& gm, const ValueFunction& v) {
  if (v.values.size() != gm.num_states)
    throw ConfigError("bellman backup: value dimension mismatch");
  ValueFunction out;
  out.values.resize(gm.num_states);
  out.iterations = v.iterations + 1;
  backup_into(gm, v.values, out.values, nullptr);
  double r = 0.0;
  for (std::size_t i = 0; i < gm.num_states; ++i)
    r = std::max(r, std::abs(out.values[i] - v.values[i]));
  out.residual = r;
  return out;
}

Solution value_iteration(const GridModel& gm, double tolerance,
                         std::size_t iteration_cap) {
  if (!(tolerance > 0.0))
    throw ConfigError("value iteration: tolerance must be positive");
  const double beta = gm.discount;

  Solution sol;
  sol.value.values.assign(gm.num_states, 0.0);
  sol.policy.actions.assign(gm.num_states, 0);
  std::vector<double> next(gm.num_states, 0.0);

  for (std::size_t it = 1; it <= iteration_cap; ++it) {
    backup_into(gm, sol.value.values, next, &sol.policy);
    double r = 0.0;
    for (std::size_t i = 0; i < gm.num_states; ++i)
      r = std::max(r, std::abs(next[i] - sol.value.values[i]));
    sol.value.values.swap(next);
    sol.value.residual = r;
    sol.value.iterations = it;
    if (beta * r / (1.0 - beta) <= tolerance) return sol;
  }
  throw IterationCapError("value iteration did not converge within " +
                          std::to_string(iteration_cap) + " sweeps");
}

ExtendedLatticePolicy extend_policy(const GridPolicy& policy,
                                    const LatticeGrid& grid) {
  if (policy.actions.size() != grid.size())
    throw ConfigError("extend: policy/grid size mismatch");
  return {&grid, policy};
}

ExtendedMeasurementPolicy extend_policy(const GridPolicy& policy,
                                        const MeasurementGrid& grid) {
  if (policy.actions.size() != grid.size())
    throw ConfigError("extend: policy/grid size mismatch");
  ExtendedMeasurementPolicy ext;
  ext.grid = &grid;
  ext.policy = policy;
  return ext;
}

ExtendedMeasurementPolicy extend_policy(const Solution& sol,
                                        const GridModel& gm,
                                        const MeasurementGrid& grid) {
  ExtendedMeasurementPolicy ext = extend_policy(sol.policy, grid);
  if (!gm.action_factored || sol.value.values.size() != gm.num_states)
    throw ConfigError("extend: solution does not match a shared-row model");
  ext.lookahead.assign(gm.num_actions, 0.0);
  for (std::size_t a = 0; a < gm.num_actions; ++a) {
    double acc = 0.0;
    const auto& row = gm.transition[0][a];
    for (std::size_t j = 0; j < gm.num_states; ++j)
      acc += row[j] * sol.value.values[j];
    ext.lookahead[a] = acc;
  }
  ext.discount = gm.discount;
  ext.objective = gm.objective;
  return ext;
}

namespace {

std::pair<std::size_t, double> dirac_opt(const ExtendedMeasurementPolicy& ext,
                                         const PopulationModel& model,
                                         double x) {
  if (ext.lookahead.empty())
    throw ConfigError("extended policy has no lookahead data; extend from a "
                      "solution to use point-mass beliefs");
  const bool maximize = ext.objective == Objective::Maximize;
  std::size_t best_a = 0;
  double best = 0.0;
  for (std::size_t a = 0; a < model.actions.size(); ++a) {
    const double q = belief_cost(model, DiracBelief{x}, model.actions[a]) +
                     ext.discount * ext.lookahead[a];
    if (a == 0 || (maximize ? q > best : q < best)) {
      best = q;
      best_a = a;
    }
  }
  return {best_a, best};
}

}  // namespace

std::size_t ExtendedMeasurementPolicy::dirac_action(
    const PopulationModel& model, double x) const {
  return dirac_opt(*this, model, x).first;
}

double ExtendedMeasurementPolicy::dirac_value(const PopulationModel& model,
                                              double x) const {
  return dirac_opt(*this, model, x).second;
}

}  // namespace beliefgrid
