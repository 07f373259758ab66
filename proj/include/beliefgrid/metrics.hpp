#pragma once

#include <utility>
#include <vector>

#include "beliefgrid/belief.hpp"
#include "beliefgrid/types.hpp"

namespace beliefgrid {

/// Finitely supported measure on the real line: strictly increasing support
/// points with positive weights summing to one.
struct DiscreteMeasure1D {
  std::vector<double> points;
  std::vector<double> weights;

  /// Sorts, merges duplicate points, drops zero weights, checks the sum.
  static DiscreteMeasure1D from_atoms(
      std::vector<std::pair<double, double>> atoms);

  void validate() const;
};

/// Minimal density interface for the 1-D measures the quantizers accept.
class Density1D {
 public:
  virtual ~Density1D() = default;
  virtual double pdf(double x) const = 0;
  virtual double cdf(double x) const = 0;
  virtual double lo() const = 0;
  virtual double hi() const = 0;
};

class UniformDensity final : public Density1D {
 public:
  UniformDensity(double a, double b);
  double pdf(double x) const override;
  double cdf(double x) const override;
  double lo() const override { return a_; }
  double hi() const override { return b_; }

 private:
  double a_, b_;
};

class TruncatedNormalDensity final : public Density1D {
 public:
  TruncatedNormalDensity(double mean, double sigma, double a, double b);
  double pdf(double x) const override;
  double cdf(double x) const override;
  double lo() const override { return a_; }
  double hi() const override { return b_; }

 private:
  double mean_, sigma_, a_, b_, mass_;
};

/// Adapter exposing an interval-reciprocal belief as a Density1D.
class IntervalReciprocalDensity final : public Density1D {
 public:
  explicit IntervalReciprocalDensity(const IntervalReciprocalBelief& z)
      : z_(z) {}
  double pdf(double x) const override;
  double cdf(double x) const override;
  double lo() const override { return z_.lower; }
  double hi() const override { return z_.upper; }

 private:
  IntervalReciprocalBelief z_;
};

/// Lp distance between two beliefs over the same finite state set.
double lp_distance(const BeliefVector& a, const BeliefVector& b,
                   SimplexNorm norm);

/// Total variation distances. The discrete forms are the L1 sums; the
/// interval-reciprocal form is closed (integral of |f1 - f2| split at the
/// support breakpoints), covering staggered, nested, and disjoint layouts.
double total_variation(const BeliefVector& a, const BeliefVector& b);
double total_variation(const DiscreteMeasure1D& a, const DiscreteMeasure1D& b);
double total_variation(const IntervalReciprocalBelief& a,
                       const IntervalReciprocalBelief& b);

/// First-order Wasserstein distance on the line: integral of |F_mu - F_nu|.
/// Exact breakpoint integration for discrete inputs, quadrature otherwise.
double wasserstein1_1d(const DiscreteMeasure1D& a, const DiscreteMeasure1D& b);
double wasserstein1_1d(const Density1D& a, const DiscreteMeasure1D& b,
                       double tol = 1e-10);
double wasserstein1_1d(const Density1D& a, const Density1D& b,
                       double tol = 1e-10);

/**
 * Bounded-Lipschitz distance between finitely supported measures: the exact
 * optimum of sup_f integral f d(mu - nu) over |f| <= b, Lip(f) <= l, b+l <= 1,
 * solved as a linear program over the support union (only support values of
 * f matter; any feasible assignment extends off-support with the same norm).
 *
 * Support union is capped at 200 points to keep the LP desk-scale.
 */
double bounded_lipschitz(const DiscreteMeasure1D& a,
                         const DiscreteMeasure1D& b);

}  // namespace beliefgrid
