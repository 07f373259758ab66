#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "beliefgrid/belief.hpp"
#include "beliefgrid/metrics.hpp"
#include "beliefgrid/model.hpp"
#include "beliefgrid/types.hpp"

namespace beliefgrid {

/// Point of the resolution-n type lattice: nonnegative counts with
/// sum(counts) = resolution, standing for the belief counts/resolution.
struct TypeLatticePoint {
  std::vector<long long> counts;
  long long resolution = 1;

  BeliefVector belief() const;
};

/// Nearest lattice point to z in L2 (ties broken deterministically).
/// Rounds each coordinate to the nearest multiple of 1/n, then repairs the
/// count sum: excess comes off the entries rounded up the most, deficit goes
/// onto the entries rounded down the most. Rounding errors are ranked by a
/// stable ascending sort of (error, coordinate index), so equal errors are
/// adjusted in index order.
TypeLatticePoint type_lattice_nearest(const BeliefVector& z, long long n);

/// Exact worst-case distance from a belief to the resolution-n lattice on
/// the m-simplex. With a = floor(m/2):
///   Linf: (1/n)(1 - 1/m)
///   L2:   (1/n) sqrt(a(m-a)/m)
///   L1:   (1/n) 2a(m-a)/m
double covering_radius(std::size_t m, long long n, SimplexNorm norm);

/// Every lattice point, in lexicographic count order.
std::vector<TypeLatticePoint> type_lattice_enumerate(std::size_t m,
                                                     long long n);

/// Finite action net over [lo, hi] with covering radius < 1/n:
/// floor(n(hi-lo)/2) + 1 midpoint levels. A degenerate interval yields the
/// single level {lo}.
std::vector<double> uniform_action_net(double lo, double hi, long long n);

/// count midpoint levels of [lo, hi]: lo + (j + 1/2)(hi - lo)/count.
std::vector<double> uniform_levels(double lo, double hi, std::size_t count);

/// Push a measure supported on [0, L] through the n-level uniform midpoint
/// quantizer of [0, L]. Cell radius L/(2n), so W1(mu, out) <= L/(2n).
DiscreteMeasure1D compact_support_quantize(const DiscreteMeasure1D& mu,
                                           double L, std::size_t n);
DiscreteMeasure1D compact_support_quantize(const Density1D& mu, double L,
                                           std::size_t n);

/// Quantize to the lattice {j/n : |j| <= n^2} covering [-n, n]; mass outside
/// [-n, n] relocates to 0. Second moment <= m gives W1(mu, out) <= (1+m)/n:
/// 1/(2n) inside the window plus the Chebyshev tail m/n.
DiscreteMeasure1D truncated_lattice_quantize(const DiscreteMeasure1D& mu,
                                             long long n);
DiscreteMeasure1D truncated_lattice_quantize(const Density1D& mu, long long n);

/// Moment constraint carving F_m = {z : sum_i z_i v(i) <= bound} out of the
/// simplex, v over state indices. v = 1 keeps everything; v(i) = i^2 makes
/// F_m proper once some Dirac falls outside.
struct MomentStructure {
  enum class Moment { One, SquaredState };
  Moment moment = Moment::One;
  double bound = 1.0;
  double growth = 1.0;

  bool proper(std::size_t num_states) const;
  double value(const BeliefVector& z) const;
  /// Lowest state index whose Dirac violates the bound; requires proper().
  std::size_t pseudo_state_index(std::size_t num_states) const;
};

/// Uniform measurement quantizer for the population model: n levels
/// y_j = (j + 1/2) K/n on [0, K] (j zero-based), codebook restricted to the
/// (action, level) pairs whose posterior support is nonempty. Immutable after
/// construction; lookups are pure.
class MeasurementQuantizer {
 public:
  struct CodeEntry {
    std::size_t action_index;
    std::size_t level_index;
  };

  /// Throws ConfigError when some action has no usable level, naming the
  /// smallest resolution that works.
  MeasurementQuantizer(const PopulationModel& model, std::size_t n);

  const PopulationModel& model() const { return *model_; }
  std::size_t levels() const { return n_; }
  double spacing() const { return delta_; }
  double level(std::size_t j) const;

  /// Inclusive range of usable level indices under action index qa.
  std::size_t level_lo(std::size_t qa) const { return lo_[qa]; }
  std::size_t level_hi(std::size_t qa) const { return hi_[qa]; }

  /// Level index for observation y under action qa, clamped into the usable
  /// range (observations in the support sliver beyond the boundary cells are
  /// absorbed by those cells).
  std::size_t quantize_level(std::size_t qa, double y) const;

  /// Observation-space cell of (qa, j): [j*spacing, (j+1)*spacing) with the
  /// two boundary cells stretched to the support endpoints, so the cells
  /// partition the full support of h(.|a).
  std::pair<double, double> cell(std::size_t qa, std::size_t j) const;

  /// Snap a belief to the codebook: same action, quantized observation.
  IntervalReciprocalBelief snap(const IntervalReciprocalBelief& z) const;

  const std::vector<CodeEntry>& codebook() const { return codebook_; }
  std::size_t code_index(std::size_t qa, std::size_t j) const;
  IntervalReciprocalBelief code_belief(std::size_t code) const;

  /// TV distortion certificate 2 K1 spacing / K2 + L1 * eps, where eps is a
  /// measured modulus of continuity of the normalizer over the compact
  /// parameter range (it has no closed form; callers sample it).
  double tv_bound(double eps_measured) const;
  double k1() const;
  double k2() const;
  double l1() const;

 private:
  const PopulationModel* model_;
  std::size_t n_ = 0;
  double delta_ = 0.0;
  std::vector<std::size_t> lo_, hi_;
  std::vector<CodeEntry> codebook_;
  std::vector<std::vector<std::size_t>> code_of_;  // [qa][j - lo_[qa]]
};

}  // namespace beliefgrid
