#include "beliefgrid/belief.hpp"

#include <algorithm>
#include <cmath>

#include "beliefgrid/quadrature.hpp"

namespace beliefgrid {

namespace {
constexpr double kMassFloor = 1e-300;  // below this, a predictive is "zero"
}

void BeliefVector::validate() const {
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw NumericError("belief: negative or non-finite weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw NumericError("belief: weights sum to " + std::to_string(sum));
}

double IntervalReciprocalBelief::normalizer() const {
  return 1.0 / std::log(upper / lower);
}

BeliefVector filter_update(const FinitePomdp& model, const BeliefVector& z,
                           std::size_t a, std::size_t y) {
  const std::size_t S = model.num_states;
  BeliefVector out;
  out.w.assign(S, 0.0);
  // Predict.
  for (std::size_t x = 0; x < S; ++x) {
    const double zx = z.w[x];
    if (zx == 0.0) continue;
    const auto& row = model.transition[x][a];
    for (std::size_t xp = 0; xp < S; ++xp) out.w[xp] += zx * row[xp];
  }
  // Correct.
  double mass = 0.0;
  for (std::size_t xp = 0; xp < S; ++xp) {
    out.w[xp] *= model.channel[xp][y];
    mass += out.w[xp];
  }
  if (mass < kMassFloor)
    throw ZeroLikelihoodError("filter: observation " + std::to_string(y) +
                              " has zero predictive mass under action " +
                              std::to_string(a));
  for (double& v : out.w) v /= mass;
  return out;
}

std::vector<double> obs_predictive(const FinitePomdp& model,
                                   const BeliefVector& z, std::size_t a) {
  const std::size_t S = model.num_states;
  std::vector<double> pred(S, 0.0);
  for (std::size_t x = 0; x < S; ++x) {
    const double zx = z.w[x];
    if (zx == 0.0) continue;
    const auto& row = model.transition[x][a];
    for (std::size_t xp = 0; xp < S; ++xp) pred[xp] += zx * row[xp];
  }
  std::vector<double> h(model.num_obs, 0.0);
  for (std::size_t y = 0; y < model.num_obs; ++y) {
    double s = 0.0;
    for (std::size_t xp = 0; xp < S; ++xp) s += model.channel[xp][y] * pred[xp];
    h[y] = s;
  }
  return h;
}

double h_density(const PopulationModel& model, double y, double a) {
  const double top = std::min(y, std::exp(model.lambda - a));
  const double bot = std::max(y - model.tau, std::exp(-a));
  if (!(top > bot) || !(bot > 0.0)) return 0.0;
  return (std::log(top) - std::log(bot)) / (model.tau * model.lambda);
}

std::pair<double, double> obs_support(const PopulationModel& model, double a) {
  return {std::exp(-a), std::exp(model.lambda - a) + model.tau};
}

IntervalReciprocalBelief f_posterior(const PopulationModel& model, double a,
                                     double y) {
  const double lo = std::max(y - model.tau, std::exp(-a));
  const double hi = std::min(y, std::exp(model.lambda - a));
  if (!(hi > lo))
    throw EmptySupportError("posterior: empty support for a=" +
                            std::to_string(a) + ", y=" + std::to_string(y));
  IntervalReciprocalBelief z;
  z.lower = lo;
  z.upper = hi;
  z.action = a;
  z.obs = y;
  return z;
}

double belief_cost(const FinitePomdp& model, const BeliefVector& z,
                   std::size_t a) {
  double c = 0.0;
  for (std::size_t x = 0; x < model.num_states; ++x)
    c += z.w[x] * model.cost[x][a];
  return c;
}

double belief_cost(const PopulationModel& model,
                   const IntervalReciprocalBelief& z, double a) {
  const double g = z.normalizer();
  const double l = z.lower, u = z.upper;
  if (model.utility.kind == Utility::Kind::Quadratic) {
    // integral of (x-a)^2 * g/x over [l, u]
    return g * (u * u - l * l) / 2.0 - 2.0 * a * g * (u - l) + a * a;
  }
  return integrate(
      [&](double x) { return model.utility(x - a) * g / x; }, l, u, 1e-10);
}

double belief_cost(const PopulationModel& model, const DiracBelief& z,
                   double a) {
  return model.utility(z.point - a);
}

std::vector<std::pair<BeliefVector, double>> belief_successors(
    const FinitePomdp& model, const BeliefVector& z, std::size_t a) {
  std::vector<std::pair<BeliefVector, double>> out;
  const auto h = obs_predictive(model, z, a);
  for (std::size_t y = 0; y < model.num_obs; ++y) {
    if (h[y] < kMassFloor) continue;  // zero-probability branch dropped
    out.emplace_back(filter_update(model, z, a, y), h[y]);
  }
  return out;
}

}  // namespace beliefgrid
