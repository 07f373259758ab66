#include "beliefgrid/finite_mdp.hpp"

#include <cmath>
#include <string>

#include "beliefgrid/quadrature.hpp"

namespace beliefgrid {

std::size_t LatticeGrid::assign(const BeliefVector& z) const {
  if (pseudo && moments.value(z) > moments.bound) return *pseudo;
  const std::size_t limit = pseudo ? *pseudo : points.size();
  std::size_t best = 0;
  double best_d = lp_distance(z, points[0], metric);
  for (std::size_t i = 1; i < limit; ++i) {
    const double d = lp_distance(z, points[i], metric);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::size_t MeasurementGrid::assign(const IntervalReciprocalBelief& z) const {
  const auto& actions = quantizer.model().actions;
  std::size_t qa = 0;
  double best = std::abs(actions[0] - z.action);
  for (std::size_t i = 1; i < actions.size(); ++i) {
    const double d = std::abs(actions[i] - z.action);
    if (d < best) {
      best = d;
      qa = i;
    }
  }
  return quantizer.code_index(qa, quantizer.quantize_level(qa, z.obs));
}

const std::vector<double>& GridModel::row(std::size_t i, std::size_t a) const {
  return transition[action_factored ? 0 : i][a];
}

double GridModel::max_abs_cost() const {
  double m = 0.0;
  for (const auto& per_state : cost)
    for (double c : per_state) m = std::max(m, std::abs(c));
  return m;
}

void GridModel::validate_rows(double tol) const {
  for (std::size_t i = 0; i < (action_factored ? 1 : num_states); ++i) {
    for (std::size_t a = 0; a < num_actions; ++a) {
      double sum = 0.0;
      for (double p : transition[i][a]) {
        if (p < -1e-15 || !std::isfinite(p))
          throw NonStochasticRowError("negative or non-finite mass in row (" +
                                      std::to_string(i) + ", " +
                                      std::to_string(a) + ")");
        sum += p;
      }
      if (std::abs(sum - 1.0) > tol)
        throw NonStochasticRowError(
            "row (" + std::to_string(i) + ", " + std::to_string(a) +
            ") sums to " + std::to_string(sum));
    }
  }
}

LatticeGrid build_grid(const FinitePomdp& model, long long n,
                       SimplexNorm metric,
                       std::optional<MomentStructure> moments) {
  model.validate();
  LatticeGrid grid;
  grid.metric = metric;
  grid.resolution = n;
  grid.cell_radius = covering_radius(model.num_states, n, metric);
  if (moments) grid.moments = *moments;

  const bool proper = moments && moments->proper(model.num_states);
  for (const auto& p : type_lattice_enumerate(model.num_states, n)) {
    BeliefVector z = p.belief();
    if (proper && grid.moments.value(z) > grid.moments.bound) continue;
    grid.points.push_back(std::move(z));
  }
  if (proper) {
    // Canonical complement representative: the lowest-index Dirac outside
    // the moment ball.
    BeliefVector rep;
    rep.w.assign(model.num_states, 0.0);
    rep.w[grid.moments.pseudo_state_index(model.num_states)] = 1.0;
    grid.pseudo = grid.points.size();
    grid.points.push_back(std::move(rep));
  }
  if (grid.points.empty())
    throw ConfigError("grid: moment bound excludes every lattice point");
  return grid;
}

MeasurementGrid build_grid(const PopulationModel& model, std::size_t n) {
  return MeasurementGrid(model, n);
}

std::vector<double> pushforward(
    const std::vector<std::pair<BeliefVector, double>>& successors,
    const LatticeGrid& grid) {
  std::vector<double> row(grid.size(), 0.0);
  for (const auto& [z, mass] : successors) row[grid.assign(z)] += mass;
  return row;
}

namespace {

/// Stratified sample beliefs for one cell of a two-state lattice grid,
/// parameterized by the first coordinate.
std::vector<BeliefVector> two_state_cell_samples(const LatticeGrid& grid,
                                                 std::size_t i,
                                                 std::size_t count) {
  const double w0 = grid.points[i].w[0];
  const double half = 0.5 / double(grid.resolution);
  const double lo = std::max(0.0, w0 - half);
  const double hi = std::min(1.0, w0 + half);
  std::vector<BeliefVector> out;
  out.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const double x = lo + (double(t) + 0.5) * (hi - lo) / double(count);
    out.push_back({{x, 1.0 - x}});
  }
  return out;
}

}  // namespace

GridModel build_finite_mdp(const FinitePomdp& model, const LatticeGrid& grid,
                           const WeightingMeasure& nu) {
  model.validate();
  const bool uniform = nu.kind == WeightingMeasure::Kind::UniformSamples;
  if (uniform && (model.num_states != 2 || grid.pseudo))
    throw ConfigError(
        "uniform weighting is implemented for two-state full-simplex grids "
        "only; use the Dirac weighting");
  if (uniform && nu.samples < 1)
    throw ConfigError("uniform weighting: samples must be >= 1");

  GridModel gm;
  gm.num_states = grid.size();
  gm.num_actions = model.num_actions;
  gm.discount = model.discount;
  gm.objective = model.objective;
  gm.transition.assign(
      gm.num_states,
      std::vector<std::vector<double>>(gm.num_actions,
                                       std::vector<double>(gm.num_states, 0.0)));
  gm.cost.assign(gm.num_states, std::vector<double>(gm.num_actions, 0.0));

  for (std::size_t i = 0; i < gm.num_states; ++i) {
    std::vector<BeliefVector> reps;
    if (uniform && (!grid.pseudo || i != *grid.pseudo))
      reps = two_state_cell_samples(grid, i, nu.samples);
    else
      reps = {grid.points[i]};
    const double w = 1.0 / double(reps.size());
    for (std::size_t a = 0; a < gm.num_actions; ++a) {
      for (const auto& z : reps) {
        gm.cost[i][a] += w * belief_cost(model, z, a);
        const auto row = pushforward(belief_successors(model, z, a), grid);
        for (std::size_t j = 0; j < gm.num_states; ++j)
          gm.transition[i][a][j] += w * row[j];
      }
    }
  }
  gm.validate_rows();
  return gm;
}

GridModel build_finite_mdp(const PopulationModel& model,
                           const MeasurementGrid& grid,
                           const WeightingMeasure& nu) {
  model.validate();
  const auto& quant = grid.quantizer;
  const bool uniform = nu.kind == WeightingMeasure::Kind::UniformSamples;
  if (uniform && nu.samples < 1)
    throw ConfigError("uniform weighting: samples must be >= 1");

  GridModel gm;
  gm.num_states = grid.size();
  gm.num_actions = model.actions.size();
  gm.discount = model.discount;
  gm.objective = model.objective;
  gm.action_factored = true;  // next belief depends on (a, y') only
  gm.transition.assign(
      1, std::vector<std::vector<double>>(gm.num_actions,
                                          std::vector<double>(gm.num_states, 0.0)));
  gm.cost.assign(gm.num_states, std::vector<double>(gm.num_actions, 0.0));

  for (std::size_t qa = 0; qa < gm.num_actions; ++qa) {
    const double a = model.actions[qa];
    // Kinks of y -> h(y|a): the switch points of the inner min and max.
    const std::vector<double> kinks = {std::exp(-a) + model.tau,
                                       std::exp(model.lambda - a)};
    for (std::size_t j = quant.level_lo(qa); j <= quant.level_hi(qa); ++j) {
      const auto [clo, chi] = quant.cell(qa, j);
      const double mass = integrate(
          [&](double y) { return h_density(model, y, a); }, clo, chi, 1e-12,
          kinks);
      gm.transition[0][qa][quant.code_index(qa, j)] = mass;
    }
  }

  for (std::size_t i = 0; i < gm.num_states; ++i) {
    const auto& entry = quant.codebook()[i];
    const double a_i = model.actions[entry.action_index];
    std::vector<IntervalReciprocalBelief> reps;
    if (uniform) {
      const auto [clo, chi] = quant.cell(entry.action_index, entry.level_index);
      for (std::size_t t = 0; t < nu.samples; ++t) {
        const double y =
            clo + (double(t) + 0.5) * (chi - clo) / double(nu.samples);
        reps.push_back(f_posterior(model, a_i, y));
      }
    } else {
      reps = {quant.code_belief(i)};
    }
    const double w = 1.0 / double(reps.size());
    for (std::size_t a = 0; a < gm.num_actions; ++a)
      for (const auto& z : reps)
        gm.cost[i][a] += w * belief_cost(model, z, model.actions[a]);
  }
  gm.validate_rows();
  return gm;
}

}  // namespace beliefgrid
