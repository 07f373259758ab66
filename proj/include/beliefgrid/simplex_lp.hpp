#pragma once

#include <cstddef>
#include <vector>

namespace beliefgrid {

struct LpResult {
  double objective = 0.0;
  std::vector<double> solution;  // primal values of the structural variables
  std::size_t pivots = 0;
};

/**
 * Maximizes c.x subject to A x <= b, x >= 0.
 *
 * Requires b >= 0 so the slack basis is feasible (every linear program in
 * this codebase has that shape; no phase-1 is needed). Pivoting is Dantzig's
 * rule with lowest-index ties, falling back to Bland's rule when the
 * objective stalls, so the method terminates and is fully deterministic.
 *
 * Throws NumericError on unbounded problems or when the pivot cap is hit
 * (reported as solver non-convergence).
 */
LpResult simplex_maximize(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b,
                          const std::vector<double>& c,
                          std::size_t pivot_cap = 200000);

}  // namespace beliefgrid
