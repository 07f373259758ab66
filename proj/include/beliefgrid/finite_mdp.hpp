#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "beliefgrid/belief.hpp"
#include "beliefgrid/model.hpp"
#include "beliefgrid/quantizer.hpp"
#include "beliefgrid/types.hpp"

namespace beliefgrid {

/// Grid over the simplex: the resolution-n type lattice, optionally
/// restricted to a moment ball with one extra pseudo-state covering the
/// complement. Cell assignment is nearest-neighbor in `metric`, distance
/// ties toward the lowest grid index.
struct LatticeGrid {
  std::vector<BeliefVector> points;  // pseudo-state appended last if present
  std::optional<std::size_t> pseudo;
  SimplexNorm metric = SimplexNorm::L2;
  long long resolution = 1;
  MomentStructure moments;
  double cell_radius = 0.0;  // covering certificate for the lattice part

  std::size_t size() const { return points.size(); }
  std::size_t assign(const BeliefVector& z) const;
};

/// Grid over interval-reciprocal beliefs: the measurement-quantizer
/// codebook. Holds a pointer into the model it was built from; the model
/// must outlive the grid.
struct MeasurementGrid {
  MeasurementQuantizer quantizer;

  MeasurementGrid(const PopulationModel& model, std::size_t n)
      : quantizer(model, n) {}

  std::size_t size() const { return quantizer.codebook().size(); }
  std::size_t assign(const IntervalReciprocalBelief& z) const;
};

using GridSpec = std::variant<LatticeGrid, MeasurementGrid>;

/// Per-cell measure the builder integrates against. Dirac at the grid point
/// keeps every quantity exactly evaluable; uniform samples spread s
/// stratified points over each cell to probe sensitivity to that choice.
struct WeightingMeasure {
  enum class Kind { DiracAtGridPoint, UniformSamples };
  Kind kind = Kind::DiracAtGridPoint;
  std::size_t samples = 5;
};

/// Finite MDP over grid states. Transition rows may be shared across source
/// states (action_factored) when the underlying kernel ignores the state, as
/// the measurement-grid construction does.
struct GridModel {
  std::size_t num_states = 0;
  std::size_t num_actions = 0;
  double discount = 0.0;
  Objective objective = Objective::Minimize;
  bool action_factored = false;
  // [i][a][j]; [0][a][j] when action_factored
  std::vector<std::vector<std::vector<double>>> transition;
  std::vector<std::vector<double>> cost;  // [i][a]

  const std::vector<double>& row(std::size_t i, std::size_t a) const;
  double max_abs_cost() const;
  /// Throws NonStochasticRowError when some row's sum is off 1 by > tol.
  void validate_rows(double tol = 1e-8) const;
};

LatticeGrid build_grid(const FinitePomdp& model, long long n,
                       SimplexNorm metric = SimplexNorm::L2,
                       std::optional<MomentStructure> moments = std::nullopt);
MeasurementGrid build_grid(const PopulationModel& model, std::size_t n);

/// Accumulates successor mass at cell indices; output sums to the input
/// total.
std::vector<double> pushforward(
    const std::vector<std::pair<BeliefVector, double>>& successors,
    const LatticeGrid& grid);

GridModel build_finite_mdp(const FinitePomdp& model, const LatticeGrid& grid,
                           const WeightingMeasure& nu = {});
GridModel build_finite_mdp(const PopulationModel& model,
                           const MeasurementGrid& grid,
                           const WeightingMeasure& nu = {});

}  // namespace beliefgrid
