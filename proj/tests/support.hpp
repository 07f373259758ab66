#pragma once

// Shared oracles for the test suite, kept independent of the library paths
// they check: integration is adaptive Simpson (the library integrates with
// Gauss-Legendre panels), linear systems go through Gaussian elimination
// (the solver iterates), transport optima come from the generic LP core
// (wasserstein1_1d integrates CDFs), and filter posteriors are enumerated
// over whole hidden-state paths (the filter recurses one step at a time).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "beliefgrid/belief.hpp"
#include "beliefgrid/finite_mdp.hpp"
#include "beliefgrid/metrics.hpp"
#include "beliefgrid/model.hpp"
#include "beliefgrid/rng.hpp"
#include "beliefgrid/simplex_lp.hpp"

namespace testsupport {

inline double simpson_rule(double a, double b, double fa, double fm,
                           double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_rule(a, m, fa, flm, fm);
  const double right = simpson_rule(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature of f over [a, b].
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double tol = 1e-11, int depth = 52) {
  if (!(a < b)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson_rule(a, b, fa, fm, fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Simpson with interior split points (for integrands with kinks).
inline double simpson_split(const std::function<double(double)>& f, double a,
                            double b, std::vector<double> cuts,
                            double tol = 1e-11) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(a, cuts[i]), hi = std::min(b, cuts[i + 1]);
    if (hi > lo) total += simpson(f, lo, hi, tol);
  }
  return total;
}

/// Gaussian elimination with partial pivoting; A is square.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> A,
                                        std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-14)
      throw std::runtime_error("singular matrix in test oracle");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= factor * A[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

/**
 * Min-cost transport between two discrete measures of equal total mass,
 * solved as an LP over the coupling matrix. The LP core only takes
 * A x <= b with b >= 0, so the marginal equalities are enforced by reward
 * shaping: maximize sum (M - d_ij) x_ij with M > max d under the marginal
 * upper bounds. Shipping everything strictly dominates, so the optimum is a
 * full coupling of minimum cost, and W1 = M - objective.
 */
inline double transport_w1(const beliefgrid::DiscreteMeasure1D& mu,
                           const beliefgrid::DiscreteMeasure1D& nu) {
  const std::size_t k1 = mu.points.size(), k2 = nu.points.size();
  double dmax = 0.0;
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = 0; j < k2; ++j)
      dmax = std::max(dmax, std::abs(mu.points[i] - nu.points[j]));
  const double M = dmax + 1.0;

  const std::size_t nv = k1 * k2;
  std::vector<std::vector<double>> A(k1 + k2, std::vector<double>(nv, 0.0));
  std::vector<double> b(k1 + k2, 0.0), c(nv, 0.0);
  for (std::size_t i = 0; i < k1; ++i) {
    b[i] = mu.weights[i];
    for (std::size_t j = 0; j < k2; ++j) A[i][i * k2 + j] = 1.0;
  }
  for (std::size_t j = 0; j < k2; ++j) {
    b[k1 + j] = nu.weights[j];
    for (std::size_t i = 0; i < k1; ++i) A[k1 + j][i * k2 + j] = 1.0;
  }
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = 0; j < k2; ++j)
      c[i * k2 + j] = M - std::abs(mu.points[i] - nu.points[j]);
  const auto res = beliefgrid::simplex_maximize(A, b, c);
  return M - res.objective;
}

/// Uniform point of the (m-1)-simplex via exponential spacings.
inline beliefgrid::BeliefVector random_simplex(beliefgrid::Rng& rng,
                                               std::size_t m) {
  beliefgrid::BeliefVector z;
  z.w.resize(m);
  double total = 0.0;
  for (auto& w : z.w) {
    w = -std::log(1.0 - rng.uniform01());
    total += w;
  }
  for (auto& w : z.w) w /= total;
  return z;
}

inline std::vector<double> random_stochastic_row(beliefgrid::Rng& rng,
                                                 std::size_t n) {
  return random_simplex(rng, n).w;
}

inline beliefgrid::FinitePomdp random_pomdp(beliefgrid::Rng& rng,
                                            std::size_t S, std::size_t A,
                                            std::size_t Y) {
  beliefgrid::FinitePomdp m;
  m.num_states = S;
  m.num_actions = A;
  m.num_obs = Y;
  m.transition.resize(S);
  m.channel.resize(S);
  m.cost.resize(S);
  for (std::size_t x = 0; x < S; ++x) {
    m.transition[x].resize(A);
    for (std::size_t a = 0; a < A; ++a)
      m.transition[x][a] = random_stochastic_row(rng, S);
    m.channel[x] = random_stochastic_row(rng, Y);
    m.cost[x].resize(A);
    for (std::size_t a = 0; a < A; ++a) m.cost[x][a] = rng.uniform01();
  }
  m.discount = 0.1 + 0.8 * rng.uniform01();
  m.validate();
  return m;
}

inline beliefgrid::GridModel random_grid_model(beliefgrid::Rng& rng,
                                               std::size_t S, std::size_t A,
                                               double beta) {
  beliefgrid::GridModel gm;
  gm.num_states = S;
  gm.num_actions = A;
  gm.discount = beta;
  gm.transition.resize(S);
  gm.cost.resize(S);
  for (std::size_t i = 0; i < S; ++i) {
    gm.transition[i].resize(A);
    gm.cost[i].resize(A);
    for (std::size_t a = 0; a < A; ++a) {
      gm.transition[i][a] = random_stochastic_row(rng, S);
      gm.cost[i][a] = rng.uniform01();
    }
  }
  gm.validate_rows();
  return gm;
}

/// Exact value of a deterministic stationary policy: (I - beta P) V = c.
inline std::vector<double> policy_value(
    const beliefgrid::GridModel& gm, const std::vector<std::size_t>& pol) {
  const std::size_t S = gm.num_states;
  std::vector<std::vector<double>> A(S, std::vector<double>(S, 0.0));
  std::vector<double> b(S, 0.0);
  for (std::size_t i = 0; i < S; ++i) {
    const auto& row = gm.row(i, pol[i]);
    for (std::size_t j = 0; j < S; ++j)
      A[i][j] = (i == j ? 1.0 : 0.0) - gm.discount * row[j];
    b[i] = gm.cost[i][pol[i]];
  }
  return solve_linear(std::move(A), std::move(b));
}

/// Optimal values by exhaustive policy enumeration plus exact evaluation.
inline std::vector<double> enumerated_optimum(const beliefgrid::GridModel& gm) {
  const std::size_t S = gm.num_states, A = gm.num_actions;
  const bool maximize = gm.objective == beliefgrid::Objective::Maximize;
  std::vector<std::size_t> pol(S, 0);
  std::vector<double> best;
  while (true) {
    const auto v = policy_value(gm, pol);
    if (best.empty()) {
      best = v;
    } else {
      for (std::size_t i = 0; i < S; ++i)
        best[i] = maximize ? std::max(best[i], v[i]) : std::min(best[i], v[i]);
    }
    std::size_t k = 0;
    while (k < S && ++pol[k] == A) pol[k++] = 0;
    if (k == S) break;
  }
  return best;
}

/**
 * Filter oracle: conditional law of x_T given observations y_{1..T} under
 * actions a_{0..T-1}, computed by summing the joint density over every
 * hidden path. No recursion is shared with the filter under test.
 */
inline beliefgrid::BeliefVector enumerated_posterior(
    const beliefgrid::FinitePomdp& m, const beliefgrid::BeliefVector& init,
    const std::vector<std::size_t>& acts, const std::vector<std::size_t>& obs) {
  const std::size_t S = m.num_states, T = acts.size();
  std::vector<double> post(S, 0.0);
  std::vector<std::size_t> path(T + 1, 0);
  while (true) {
    double p = init.w[path[0]];
    for (std::size_t t = 0; t < T && p > 0.0; ++t)
      p *= m.transition[path[t]][acts[t]][path[t + 1]] *
           m.channel[path[t + 1]][obs[t]];
    post[path[T]] += p;
    std::size_t k = 0;
    while (k <= T && ++path[k] == S) path[k++] = 0;
    if (k == T + 1) break;
  }
  double total = 0.0;
  for (double w : post) total += w;
  if (total <= 0.0)
    throw std::runtime_error("impossible observation sequence in test oracle");
  beliefgrid::BeliefVector z;
  z.w = post;
  for (auto& w : z.w) w /= total;
  return z;
}

}  // namespace testsupport
