#include "beliefgrid/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "beliefgrid/types.hpp"

namespace beliefgrid {

namespace {

constexpr int kOrder = 16;

struct GaussTable {
  std::vector<double> nodes;
  std::vector<double> weights;

  GaussTable() {
    nodes.resize(kOrder);
    weights.resize(kOrder);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < kOrder; ++i) {
      // Chebyshev-based initial guess, then Newton on P_n(x) = 0.
      double x = std::cos(pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= kOrder; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussTable& table() {
  static const GaussTable t;
  return t;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes() { return table().nodes; }
const std::vector<double>& gauss_legendre_weights() { return table().weights; }

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels) {
  const auto& xs = gauss_legendre_nodes();
  const auto& ws = gauss_legendre_weights();
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double sum = 0.0;
    for (int i = 0; i < kOrder; ++i) sum += ws[i] * f(mid + half * xs[i]);
    total += sum * half;
  }
  return total;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, const std::vector<double>& breakpoints) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  const double piece_tol = tol / double(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    if (!(hi > lo)) continue;
    double prev = integrate_panels(f, lo, hi, 1);
    bool done = false;
    for (int panels = 2; panels <= (1 << 14); panels *= 2) {
      double cur = integrate_panels(f, lo, hi, panels);
      if (std::abs(cur - prev) <= piece_tol) {
        total += cur;
        done = true;
        break;
      }
      prev = cur;
    }
    if (!done)
      throw NumericError("quadrature did not converge on [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return total;
}

}  // namespace beliefgrid
