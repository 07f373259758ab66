#include "beliefgrid/simplex_lp.hpp"

#include <cmath>
#include <limits>

#include "beliefgrid/types.hpp"

namespace beliefgrid {

namespace {
constexpr double kEps = 1e-11;
}

LpResult simplex_maximize(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b,
                          const std::vector<double>& c,
                          std::size_t pivot_cap) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw NumericError("simplex: ragged constraint matrix");
    if (b[i] < 0.0) throw NumericError("simplex: negative right-hand side");
  }

  // Tableau: m rows of [structural | slack | rhs], plus objective row z.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1.0;
    T[i][cols - 1] = b[i];
  }
  for (std::size_t j = 0; j < n; ++j) T[m][j] = c[j];

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  double last_obj = 0.0;
  std::size_t stall = 0;
  bool bland = false;
  std::size_t pivots = 0;

  while (true) {
    // Entering column.
    std::size_t enter = cols;  // sentinel
    if (bland) {
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (T[m][j] > kEps) {
          enter = j;
          break;
        }
    } else {
      double best = kEps;
      for (std::size_t j = 0; j + 1 < cols; ++j)
        if (T[m][j] > best) {
          best = T[m][j];
          enter = j;
        }
    }
    if (enter == cols) break;  // optimal

    // Two-pass ratio test. Heavily degenerate tableaus (many zero rhs) are
    // the normal case here, so the rhs is clamped at zero when computing
    // ratios and the row is picked for numerical quality: smallest ratio
    // first, then the largest pivot element among near-ties (under Bland's
    // rule: the lowest basis index, for the anti-cycling guarantee).
    constexpr double kPivot = 1e-9;
    double eligible = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      eligible = std::max(eligible, T[i][enter]);
    const double piv_floor = eligible > kPivot ? kPivot : kEps;

    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i)
      if (T[i][enter] > piv_floor)
        best_ratio = std::min(
            best_ratio, std::max(T[i][cols - 1], 0.0) / T[i][enter]);
    if (best_ratio == std::numeric_limits<double>::infinity())
      throw NumericError("simplex: unbounded objective");

    const double ratio_cut = best_ratio + kEps * (1.0 + best_ratio);
    std::size_t leave = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= piv_floor) continue;
      if (std::max(T[i][cols - 1], 0.0) / T[i][enter] > ratio_cut) continue;
      if (leave == m) {
        leave = i;
      } else if (bland) {
        if (basis[i] < basis[leave]) leave = i;
      } else if (T[i][enter] > T[leave][enter]) {
        leave = i;
      }
    }

    // Pivot.
    const double piv = T[leave][enter];
    for (std::size_t j = 0; j < cols; ++j) T[leave][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = T[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) T[i][j] -= factor * T[leave][j];
    }
    basis[leave] = enter;

    // keep roundoff from seeding an infeasible (negative-rhs) iterate
    for (std::size_t i = 0; i < m; ++i)
      if (T[i][cols - 1] < 0.0 && T[i][cols - 1] > -1e-9) T[i][cols - 1] = 0.0;

    if (++pivots > pivot_cap)
      throw NumericError("simplex: pivot cap reached (non-convergence)");

    const double obj = -T[m][cols - 1];
    if (obj > last_obj + kEps) {
      stall = 0;
      bland = false;
      last_obj = obj;
    } else if (++stall > 3 * m + 10) {
      bland = true;  // degenerate cycling guard
    }
  }

  LpResult res;
  res.objective = -T[m][cols - 1];
  res.pivots = pivots;
  res.solution.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.solution[basis[i]] = T[i][cols - 1];
  return res;
}

}  // namespace beliefgrid
