#include "beliefgrid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "beliefgrid/quadrature.hpp"
#include "beliefgrid/simplex_lp.hpp"

namespace beliefgrid {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Cumulative weight of `m` strictly below or at t.
double step_cdf(const DiscreteMeasure1D& m, double t) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.points.size() && m.points[i] <= t; ++i)
    acc += m.weights[i];
  return acc;
}

/// Bisection for F(t) = target on [lo, hi]; F continuous nondecreasing.
double cdf_crossing(const std::function<double(double)>& F, double lo,
                    double hi, double target) {
  double a = lo, b = hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (a + b);
    if (F(mid) < target)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

DiscreteMeasure1D DiscreteMeasure1D::from_atoms(
    std::vector<std::pair<double, double>> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  DiscreteMeasure1D m;
  for (const auto& [p, w] : atoms) {
    if (w == 0.0) continue;
    if (!m.points.empty() && p == m.points.back())
      m.weights.back() += w;
    else {
      m.points.push_back(p);
      m.weights.push_back(w);
    }
  }
  m.validate();
  return m;
}

void DiscreteMeasure1D::validate() const {
  if (points.size() != weights.size())
    throw NumericError("measure: point/weight size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]))
      throw NumericError("measure: non-finite support point");
    if (!(weights[i] > 0.0))
      throw NumericError("measure: weights must be positive");
    if (i > 0 && !(points[i] > points[i - 1]))
      throw NumericError("measure: support must be strictly increasing");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw NumericError("measure: weights sum to " + std::to_string(sum));
}

UniformDensity::UniformDensity(double a, double b) : a_(a), b_(b) {
  if (!(b > a)) throw NumericError("uniform density: empty interval");
}

double UniformDensity::pdf(double x) const {
  return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
}

double UniformDensity::cdf(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return 1.0;
  return (x - a_) / (b_ - a_);
}

TruncatedNormalDensity::TruncatedNormalDensity(double mean, double sigma,
                                               double a, double b)
    : mean_(mean), sigma_(sigma), a_(a), b_(b) {
  if (!(b > a) || !(sigma > 0.0))
    throw NumericError("truncated normal: invalid parameters");
  mass_ = normal_cdf((b - mean) / sigma) - normal_cdf((a - mean) / sigma);
  if (!(mass_ > 0.0))
    throw NumericError("truncated normal: no mass on the interval");
}

double TruncatedNormalDensity::pdf(double x) const {
  if (x < a_ || x > b_) return 0.0;
  const double t = (x - mean_) / sigma_;
  const double phi = std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::acos(-1.0));
  return phi / (sigma_ * mass_);
}

double TruncatedNormalDensity::cdf(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return 1.0;
  return (normal_cdf((x - mean_) / sigma_) - normal_cdf((a_ - mean_) / sigma_)) /
         mass_;
}

double IntervalReciprocalDensity::pdf(double x) const {
  if (x < z_.lower || x > z_.upper) return 0.0;
  return z_.normalizer() / x;
}

double IntervalReciprocalDensity::cdf(double x) const {
  if (x <= z_.lower) return 0.0;
  if (x >= z_.upper) return 1.0;
  return z_.normalizer() * std::log(x / z_.lower);
}

double lp_distance(const BeliefVector& a, const BeliefVector& b,
                   SimplexNorm norm) {
  if (a.w.size() != b.w.size())
    throw NumericError("lp_distance: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.w.size(); ++i) {
    const double d = std::abs(a.w[i] - b.w[i]);
    switch (norm) {
      case SimplexNorm::L1: acc += d; break;
      case SimplexNorm::L2: acc += d * d; break;
      case SimplexNorm::Linf: acc = std::max(acc, d); break;
    }
  }
  return norm == SimplexNorm::L2 ? std::sqrt(acc) : acc;
}

double total_variation(const BeliefVector& a, const BeliefVector& b) {
  return lp_distance(a, b, SimplexNorm::L1);
}

double total_variation(const DiscreteMeasure1D& a, const DiscreteMeasure1D& b) {
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.points.size() || j < b.points.size()) {
    if (j == b.points.size() ||
        (i < a.points.size() && a.points[i] < b.points[j]))
      acc += a.weights[i++];
    else if (i == a.points.size() || b.points[j] < a.points[i])
      acc += b.weights[j++];
    else {
      acc += std::abs(a.weights[i] - b.weights[j]);
      ++i;
      ++j;
    }
  }
  return acc;
}

double total_variation(const IntervalReciprocalBelief& a,
                       const IntervalReciprocalBelief& b) {
  const IntervalReciprocalBelief& z1 = a.lower <= b.lower ? a : b;
  const IntervalReciprocalBelief& z2 = a.lower <= b.lower ? b : a;
  if (z2.lower >= z1.upper) return 2.0;  // disjoint supports

  const double g1 = z1.normalizer();
  const double g2 = z2.normalizer();
  const double umin = std::min(z1.upper, z2.upper);
  const double umax = std::max(z1.upper, z2.upper);
  // Left sliver where only z1 lives, middle overlap, right tail from
  // whichever interval reaches further (z2 when staggered, z1 when nested).
  const double gtail = z2.upper >= z1.upper ? g2 : g1;
  return g1 * std::log(z2.lower / z1.lower) +
         std::abs(g1 - g2) * std::log(umin / z2.lower) +
         gtail * std::log(umax / umin);
}

double wasserstein1_1d(const DiscreteMeasure1D& a, const DiscreteMeasure1D& b) {
  std::vector<double> ts;
  ts.reserve(a.points.size() + b.points.size());
  ts.insert(ts.end(), a.points.begin(), a.points.end());
  ts.insert(ts.end(), b.points.begin(), b.points.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  double acc = 0.0;
  double fa = 0.0, fb = 0.0;
  std::size_t i = 0, j = 0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    while (i < a.points.size() && a.points[i] <= ts[k]) fa += a.weights[i++];
    while (j < b.points.size() && b.points[j] <= ts[k]) fb += b.weights[j++];
    acc += std::abs(fa - fb) * (ts[k + 1] - ts[k]);
  }
  return acc;
}

double wasserstein1_1d(const Density1D& a, const DiscreteMeasure1D& b,
                       double tol) {
  std::vector<double> cuts = b.points;
  cuts.push_back(a.lo());
  cuts.push_back(a.hi());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double lo = std::min(a.lo(), b.points.front());
  const double hi = std::max(a.hi(), b.points.back());
  auto Fa = [&](double t) { return a.cdf(t); };

  // Between breakpoints the step CDF is constant, so |F_a - c| has at most
  // one kink (where F_a crosses c); add it and integrate smooth pieces.
  double total = 0.0;
  std::vector<double> grid;
  grid.push_back(lo);
  for (double c : cuts)
    if (c > lo && c < hi) grid.push_back(c);
  grid.push_back(hi);
  const double seg_tol = tol / double(grid.size());
  for (std::size_t s = 0; s + 1 < grid.size(); ++s) {
    const double l = grid[s], r = grid[s + 1];
    if (!(r > l)) continue;
    const double c = step_cdf(b, 0.5 * (l + r));
    std::vector<double> brk;
    const double Fl = Fa(l), Fr = Fa(r);
    if ((Fl - c) * (Fr - c) < 0.0) brk.push_back(cdf_crossing(Fa, l, r, c));
    total += integrate([&](double t) { return std::abs(Fa(t) - c); }, l, r,
                       seg_tol, brk);
  }
  return total;
}

double wasserstein1_1d(const Density1D& a, const Density1D& b, double tol) {
  const double lo = std::min(a.lo(), b.lo());
  const double hi = std::max(a.hi(), b.hi());
  auto G = [&](double t) { return a.cdf(t) - b.cdf(t); };

  // Locate sign changes of F_a - F_b on a scan grid, refine by bisection,
  // and hand the roots to the quadrature as breakpoints so each piece of
  // |F_a - F_b| is smooth.
  std::vector<double> brk = {a.lo(), a.hi(), b.lo(), b.hi()};
  const int scan = 2048;
  double prev_t = lo, prev_g = G(lo);
  for (int i = 1; i <= scan; ++i) {
    const double t = lo + (hi - lo) * double(i) / scan;
    const double g = G(t);
    if ((prev_g < 0.0 && g > 0.0) || (prev_g > 0.0 && g < 0.0)) {
      double x = prev_t, y = t, gl = prev_g;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (x + y);
        const double gm = G(mid);
        if ((gl < 0.0) == (gm < 0.0)) {
          x = mid;
          gl = gm;
        } else {
          y = mid;
        }
      }
      brk.push_back(0.5 * (x + y));
    }
    prev_t = t;
    prev_g = g;
  }
  return integrate([&](double t) { return std::abs(G(t)); }, lo, hi, tol, brk);
}

double bounded_lipschitz(const DiscreteMeasure1D& a,
                         const DiscreteMeasure1D& b) {
  // Support union and signed weights w = mu - nu.
  std::vector<double> pts;
  std::vector<double> w;
  std::size_t i = 0, j = 0;
  while (i < a.points.size() || j < b.points.size()) {
    if (j == b.points.size() ||
        (i < a.points.size() && a.points[i] < b.points[j])) {
      pts.push_back(a.points[i]);
      w.push_back(a.weights[i++]);
    } else if (i == a.points.size() || b.points[j] < a.points[i]) {
      pts.push_back(b.points[j]);
      w.push_back(-b.weights[j++]);
    } else {
      pts.push_back(a.points[i]);
      w.push_back(a.weights[i++] - b.weights[j++]);
    }
  }
  const std::size_t k = pts.size();
  if (k > 200)
    throw NumericError("bounded_lipschitz: support union exceeds 200 points");
  if (k == 0) return 0.0;

  // Variables: f_i = p_i - q_i (free via split), then bound b, slope l.
  // maximize sum w_i (p_i - q_i)
  // s.t.  +-(p_i - q_i) <= b, +-((p_i-q_i) - (p_j-q_j)) <= l * |s_i - s_j|,
  //       b + l <= 1.
  const std::size_t n = 2 * k + 2;
  const std::size_t ib = 2 * k, il = 2 * k + 1;
  std::vector<std::vector<double>> A;
  std::vector<double> rhs;
  auto row = [&]() -> std::vector<double>& {
    A.emplace_back(n, 0.0);
    rhs.push_back(0.0);
    return A.back();
  };
  for (std::size_t s = 0; s < k; ++s) {
    auto& r1 = row();  // f_s - b <= 0
    r1[s] = 1.0;
    r1[k + s] = -1.0;
    r1[ib] = -1.0;
    auto& r2 = row();  // -f_s - b <= 0
    r2[s] = -1.0;
    r2[k + s] = 1.0;
    r2[ib] = -1.0;
  }
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = s + 1; t < k; ++t) {
      const double d = std::abs(pts[s] - pts[t]);
      auto& r1 = row();  // f_s - f_t - l*d <= 0
      r1[s] = 1.0;
      r1[k + s] = -1.0;
      r1[t] = -1.0;
      r1[k + t] = 1.0;
      r1[il] = -d;
      auto& r2 = row();  // f_t - f_s - l*d <= 0
      r2[t] = 1.0;
      r2[k + t] = -1.0;
      r2[s] = -1.0;
      r2[k + s] = 1.0;
      r2[il] = -d;
    }
  }
  auto& cap = row();  // b + l <= 1
  cap[ib] = 1.0;
  cap[il] = 1.0;
  rhs.back() = 1.0;

  std::vector<double> obj(n, 0.0);
  for (std::size_t s = 0; s < k; ++s) {
    obj[s] = w[s];
    obj[k + s] = -w[s];
  }
  return simplex_maximize(A, rhs, obj).objective;
}

}  // namespace beliefgrid
