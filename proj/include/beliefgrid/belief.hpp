#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "beliefgrid/model.hpp"
#include "beliefgrid/types.hpp"

namespace beliefgrid {

/// Probability vector over the states of a FinitePomdp.
struct BeliefVector {
  std::vector<double> w;

  void validate() const;
};

/**
 * Posterior of the population model given one (action, observation) pair:
 * density gamma/x on [lower, upper], gamma = 1 / log(upper/lower). The
 * generating pair is kept as tags; the quantizer keys its cells on them.
 */
struct IntervalReciprocalBelief {
  double lower = 0.0;
  double upper = 0.0;
  double action = 0.0;
  double obs = 0.0;

  double normalizer() const;  // gamma
};

/// Point-mass belief; the population model starts from one (known state).
struct DiracBelief {
  double point = 0.0;
};

using PopulationBelief = std::variant<DiracBelief, IntervalReciprocalBelief>;

/// One Bayes step: predict through transition[.][a], weight by channel
/// likelihoods of y, renormalize. Throws ZeroLikelihoodError when the
/// predictive mass of y is below 1e-300 (observation impossible under the
/// predicted belief).
BeliefVector filter_update(const FinitePomdp& model, const BeliefVector& z,
                           std::size_t a, std::size_t y);

/// Law of the next observation given belief and action.
std::vector<double> obs_predictive(const FinitePomdp& model,
                                   const BeliefVector& z, std::size_t a);

/// Observation density h(y|a) of the population model (state-independent):
/// (1/(tau*lambda)) * [log(min(y, e^{lambda-a})) - log(max(y-tau, e^{-a}))]^+.
double h_density(const PopulationModel& model, double y, double a);

/// Interval of y with h(y|a) > 0: (e^{-a}, e^{lambda-a} + tau).
std::pair<double, double> obs_support(const PopulationModel& model, double a);

/// Posterior f(.|a, y): support [y-tau, y] intersect [e^{-a}, e^{lambda-a}],
/// density gamma/x. Throws EmptySupportError when the intersection is empty.
IntervalReciprocalBelief f_posterior(const PopulationModel& model, double a,
                                     double y);

double belief_cost(const FinitePomdp& model, const BeliefVector& z,
                   std::size_t a);
double belief_cost(const PopulationModel& model,
                   const IntervalReciprocalBelief& z, double a);
double belief_cost(const PopulationModel& model, const DiracBelief& z,
                   double a);

/// Exact decomposition of the belief transition under (z, a) for finite
/// observation sets: one (filter output, predictive mass) pair per
/// observation with positive mass.
std::vector<std::pair<BeliefVector, double>> belief_successors(
    const FinitePomdp& model, const BeliefVector& z, std::size_t a);

}  // namespace beliefgrid
