#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "beliefgrid/types.hpp"

namespace beliefgrid {

/**
 * Finite-state partially observed model: hidden state x, action a,
 * observation y, all finite. transition[x][a] is the row over successor
 * states, channel[x] the row over observations emitted from state x, and
 * cost[x][a] the one-stage cost (or reward, per `objective`).
 */
struct FinitePomdp {
  std::size_t num_states = 0;
  std::size_t num_actions = 0;
  std::size_t num_obs = 0;
  std::vector<std::vector<std::vector<double>>> transition;
  std::vector<std::vector<double>> channel;
  std::vector<std::vector<double>> cost;
  double discount = 0.0;
  Objective objective = Objective::Minimize;

  /// Throws NumericError naming the offending row/field. Factory functions
  /// call this; hand-built instances should too.
  void validate() const;

  double max_abs_cost() const;
};

/**
 * Two-state repair model. State 1 = working, 0 = broken; action 1 = repair;
 * observation = state passed through a binary symmetric channel with
 * crossover epsilon. kappa is the repair success probability from broken,
 * alpha the probability a working machine survives one step unrepaired.
 * The two transitions the story leaves open default to "a working machine
 * under repair stays working" and "an unrepaired broken machine stays
 * broken", both overridable.
 */
struct MachineRepairParams {
  double epsilon = 0.17;
  double kappa = 0.9;
  double alpha = 0.9545;
  double repair_cost = 1.0;    // R
  double downtime_cost = 2.0;  // E
  double discount = 0.3;
  double repaired_stays_working = 1.0;
  double unrepaired_stays_broken = 1.0;
};

FinitePomdp machine_repair(const MachineRepairParams& p);

/// Utility shape u(t) for the population model's one-stage reward u(x - a).
/// Quadratic has closed-form belief integrals; Custom falls back to
/// quadrature.
struct Utility {
  enum class Kind { Quadratic, Custom };
  Kind kind = Kind::Quadratic;
  std::function<double(double)> fn;

  double operator()(double t) const {
    return kind == Kind::Quadratic ? t * t : fn(t);
  }
};

/**
 * Continuous population-growth model: x' = exp(-a + v), y = x + xi, with
 * v ~ uniform[0, lambda] and xi ~ uniform[0, tau]. States live in
 * (0, L] with L = e^lambda, observations in [0, K] with K = L + tau.
 * One-stage reward u(x - a), maximized by default.
 */
struct PopulationModel {
  double lambda = 1.0;
  double tau = 0.5;
  double discount = 0.2;
  std::vector<double> actions;  // strictly increasing, inside (0, L]
  Utility utility;
  double theta = 0.0;  // <= 0 selects the default min(0.01, e^{-a_max}/2)
  Objective objective = Objective::Maximize;

  double state_bound() const;  // L
  double obs_bound() const;    // K
  double min_action() const;
  double max_action() const;
  double theta_value() const;
  double max_abs_cost() const;

  void validate() const;
};

/// Reference construction: `action_count` midpoint action levels on (0, L].
PopulationModel population_growth(double lambda, double tau, double discount,
                                  std::size_t action_count, Utility u = {});

/// Pass/fail report over the standing model assumptions (bounded cost, weak
/// continuity of the kernel, total-variation continuity of the channel,
/// compact actions, moment growth, initial moment). Reporting, not throwing:
/// callers decide whether a failed clause is fatal.
struct AssumptionReport {
  struct Clause {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Clause> clauses;

  bool all_pass() const {
    for (const auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }
};

AssumptionReport validate_assumptions(const FinitePomdp& model);
AssumptionReport validate_assumptions(const PopulationModel& model);

}  // namespace beliefgrid
