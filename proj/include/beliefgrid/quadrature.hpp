#pragma once

#include <functional>
#include <vector>

namespace beliefgrid {

/// 16-point Gauss-Legendre nodes on [-1, 1], computed once by Newton
/// iteration on the Legendre polynomial (deterministic to full precision).
const std::vector<double>& gauss_legendre_nodes();
const std::vector<double>& gauss_legendre_weights();

/// Composite 16-point Gauss-Legendre over [a, b] with `panels` equal panels.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels);

/**
 * Integrates f over [a, b] to absolute tolerance `tol`.
 *
 * The interval is first split at the interior `breakpoints` (callers pass the
 * kink locations of piecewise-smooth integrands, e.g. where a min/max inside
 * a log switches branch); each smooth piece is then refined by panel doubling
 * until two successive composite rules agree within its tolerance share.
 *
 * Throws NumericError if a piece fails to settle by 2^14 panels.
 */
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, const std::vector<double>& breakpoints = {});

}  // namespace beliefgrid
