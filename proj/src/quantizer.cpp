#include "beliefgrid/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "beliefgrid/quadrature.hpp"

namespace beliefgrid {

BeliefVector TypeLatticePoint::belief() const {
  BeliefVector z;
  z.w.reserve(counts.size());
  for (long long k : counts)
    z.w.push_back(double(k) / double(resolution));
  return z;
}

TypeLatticePoint type_lattice_nearest(const BeliefVector& z, long long n) {
  z.validate();
  if (n < 1) throw ConfigError("type lattice: resolution must be >= 1");
  const std::size_t m = z.w.size();

  TypeLatticePoint out;
  out.resolution = n;
  out.counts.resize(m);
  std::vector<double> err(m);
  long long sum = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = double(n) * z.w[i];
    out.counts[i] = (long long)std::floor(t + 0.5);
    err[i] = double(out.counts[i]) - t;
    sum += out.counts[i];
  }
  long long excess = sum - n;
  if (excess == 0) return out;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return err[a] < err[b];
  });

  if (excess > 0) {
    // Entries rounded up the most sit at the back; each has error > 0, so
    // its count is at least 1 and the decrement cannot go negative.
    for (long long t = 0; t < excess; ++t) {
      const std::size_t i = order[m - 1 - std::size_t(t)];
      if (out.counts[i] == 0)
        throw NumericError("type lattice: repair would produce a negative count");
      --out.counts[i];
    }
  } else {
    for (long long t = 0; t < -excess; ++t) ++out.counts[order[std::size_t(t)]];
  }
  return out;
}

double covering_radius(std::size_t m, long long n, SimplexNorm norm) {
  if (m < 2 || n < 1) throw ConfigError("covering radius: need m >= 2, n >= 1");
  const double a = double(m / 2);
  const double md = double(m);
  switch (norm) {
    case SimplexNorm::Linf: return (1.0 / double(n)) * (1.0 - 1.0 / md);
    case SimplexNorm::L2: return std::sqrt(a * (md - a) / md) / double(n);
    case SimplexNorm::L1: return 2.0 * a * (md - a) / md / double(n);
  }
  throw ConfigError("covering radius: unknown norm");
}

namespace {

void enumerate_rec(std::size_t m, long long remaining,
                   std::vector<long long>& prefix,
                   std::vector<TypeLatticePoint>& out, long long n) {
  if (prefix.size() + 1 == m) {
    prefix.push_back(remaining);
    out.push_back({prefix, n});
    prefix.pop_back();
    return;
  }
  for (long long k = 0; k <= remaining; ++k) {
    prefix.push_back(k);
    enumerate_rec(m, remaining - k, prefix, out, n);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<TypeLatticePoint> type_lattice_enumerate(std::size_t m,
                                                     long long n) {
  if (m < 1 || n < 1) throw ConfigError("type lattice: need m >= 1, n >= 1");
  std::vector<TypeLatticePoint> out;
  std::vector<long long> prefix;
  enumerate_rec(m, n, prefix, out, n);
  return out;
}

std::vector<double> uniform_levels(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  const double w = (hi - lo) / double(count);
  for (std::size_t j = 0; j < count; ++j)
    out.push_back(lo + (double(j) + 0.5) * w);
  return out;
}

std::vector<double> uniform_action_net(double lo, double hi, long long n) {
  if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ConfigError("action net: interval must be bounded with hi >= lo");
  if (n < 1) throw ConfigError("action net: n must be >= 1");
  if (hi == lo) return {lo};
  const std::size_t k = std::size_t(std::floor(double(n) * (hi - lo) / 2.0)) + 1;
  return uniform_levels(lo, hi, k);
}

namespace {

DiscreteMeasure1D quantize_to_levels(const DiscreteMeasure1D& mu,
                                     const std::vector<double>& levels,
                                     double lo, double width) {
  // Nearest level by cell membership; interior cell boundaries round up,
  // matching half-open quantization cells.
  std::vector<double> w(levels.size(), 0.0);
  for (std::size_t i = 0; i < mu.points.size(); ++i) {
    double rel = (mu.points[i] - lo) / width;
    long long j = (long long)std::floor(rel);
    j = std::max<long long>(0, std::min<long long>(j, (long long)levels.size() - 1));
    w[std::size_t(j)] += mu.weights[i];
  }
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t j = 0; j < levels.size(); ++j)
    if (w[j] > 0.0) atoms.emplace_back(levels[j], w[j]);
  return DiscreteMeasure1D::from_atoms(std::move(atoms));
}

DiscreteMeasure1D quantize_density_to_levels(const Density1D& mu,
                                             const std::vector<double>& levels,
                                             double lo, double width) {
  std::vector<std::pair<double, double>> atoms;
  double prev_cdf = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double right = (j + 1 == levels.size())
                             ? std::max(mu.hi(), lo + width * double(j + 1))
                             : lo + width * double(j + 1);
    const double c = (j + 1 == levels.size()) ? 1.0 : mu.cdf(right);
    const double mass = c - prev_cdf;
    prev_cdf = c;
    if (mass > 0.0) atoms.emplace_back(levels[j], mass);
  }
  return DiscreteMeasure1D::from_atoms(std::move(atoms));
}

}  // namespace

DiscreteMeasure1D compact_support_quantize(const DiscreteMeasure1D& mu,
                                           double L, std::size_t n) {
  if (!(L > 0.0) || n < 1)
    throw ConfigError("compact quantize: need L > 0 and n >= 1");
  return quantize_to_levels(mu, uniform_levels(0.0, L, n), 0.0, L / double(n));
}

DiscreteMeasure1D compact_support_quantize(const Density1D& mu, double L,
                                           std::size_t n) {
  if (!(L > 0.0) || n < 1)
    throw ConfigError("compact quantize: need L > 0 and n >= 1");
  return quantize_density_to_levels(mu, uniform_levels(0.0, L, n), 0.0,
                                    L / double(n));
}

namespace {

std::vector<double> truncation_levels(long long n) {
  std::vector<double> levels;
  levels.reserve(std::size_t(2 * n * n + 1));
  for (long long j = -n * n; j <= n * n; ++j)
    levels.push_back(double(j) / double(n));
  return levels;
}

}  // namespace

DiscreteMeasure1D truncated_lattice_quantize(const DiscreteMeasure1D& mu,
                                             long long n) {
  if (n < 1) throw ConfigError("truncated quantize: n must be >= 1");
  const auto levels = truncation_levels(n);
  const double nn = double(n);
  std::vector<double> w(levels.size(), 0.0);
  const std::size_t zero = std::size_t(n * n);  // index of level 0
  for (std::size_t i = 0; i < mu.points.size(); ++i) {
    const double x = mu.points[i];
    if (x < -nn || x > nn) {
      w[zero] += mu.weights[i];
      continue;
    }
    long long j = (long long)std::floor(x * nn + 0.5);
    j = std::max(-n * n, std::min(j, n * n));
    w[std::size_t(j + n * n)] += mu.weights[i];
  }
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t j = 0; j < levels.size(); ++j)
    if (w[j] > 0.0) atoms.emplace_back(levels[j], w[j]);
  return DiscreteMeasure1D::from_atoms(std::move(atoms));
}

DiscreteMeasure1D truncated_lattice_quantize(const Density1D& mu, long long n) {
  if (n < 1) throw ConfigError("truncated quantize: n must be >= 1");
  const double nn = double(n);
  std::vector<std::pair<double, double>> atoms;
  const double tail =
      mu.cdf(-nn) + (1.0 - mu.cdf(nn));  // relocated to level 0 below
  for (long long j = -n * n; j <= n * n; ++j) {
    const double lo = std::max(-nn, (double(j) - 0.5) / nn);
    const double hi = std::min(nn, (double(j) + 0.5) / nn);
    double mass = mu.cdf(hi) - mu.cdf(lo);
    if (j == 0) mass += tail;
    if (mass > 0.0) atoms.emplace_back(double(j) / nn, mass);
  }
  return DiscreteMeasure1D::from_atoms(std::move(atoms));
}

bool MomentStructure::proper(std::size_t num_states) const {
  if (moment == Moment::One) return false;
  const double top = double(num_states - 1);
  return top * top > bound;
}

double MomentStructure::value(const BeliefVector& z) const {
  if (moment == Moment::One) return 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < z.w.size(); ++i)
    acc += z.w[i] * double(i) * double(i);
  return acc;
}

std::size_t MomentStructure::pseudo_state_index(std::size_t num_states) const {
  for (std::size_t i = 0; i < num_states; ++i)
    if (double(i) * double(i) > bound) return i;
  throw ConfigError("moment structure: no state violates the bound");
}

MeasurementQuantizer::MeasurementQuantizer(const PopulationModel& model,
                                           std::size_t n)
    : model_(&model), n_(n) {
  model.validate();
  if (n < 1) throw ConfigError("measurement quantizer: n must be >= 1");
  delta_ = model.obs_bound() / double(n);

  const std::size_t q = model.actions.size();
  lo_.resize(q);
  hi_.resize(q);
  code_of_.resize(q);
  for (std::size_t qa = 0; qa < q; ++qa) {
    const auto [slo, shi] = obs_support(model, model.actions[qa]);
    // Usable level: strictly inside the support, so the posterior interval
    // has positive length.
    std::size_t j = 0;
    while (j < n && level(j) <= slo) ++j;
    std::size_t k = j;
    while (k < n && level(k) < shi) ++k;
    if (k == j) {
      const double width = shi - slo;
      const std::size_t need =
          std::size_t(std::ceil(model.obs_bound() / width)) + 1;
      throw ConfigError(
          "measurement quantizer: no usable level for action " +
          std::to_string(model.actions[qa]) + "; use n >= " +
          std::to_string(need));
    }
    lo_[qa] = j;
    hi_[qa] = k - 1;
    code_of_[qa].resize(k - j);
    for (std::size_t lvl = j; lvl < k; ++lvl) {
      code_of_[qa][lvl - j] = codebook_.size();
      codebook_.push_back({qa, lvl});
    }
  }
}

double MeasurementQuantizer::level(std::size_t j) const {
  return (double(j) + 0.5) * delta_;
}

std::size_t MeasurementQuantizer::quantize_level(std::size_t qa,
                                                 double y) const {
  long long j = (long long)std::floor(y / delta_);
  j = std::max<long long>((long long)lo_[qa],
                          std::min<long long>(j, (long long)hi_[qa]));
  return std::size_t(j);
}

std::pair<double, double> MeasurementQuantizer::cell(std::size_t qa,
                                                     std::size_t j) const {
  const auto [slo, shi] =
      obs_support(*model_, model_->actions[qa]);
  double lo = double(j) * delta_;
  double hi = double(j + 1) * delta_;
  if (j == lo_[qa]) lo = std::min(lo, slo);
  if (j == hi_[qa]) hi = std::max(hi, shi);
  return {std::max(lo, slo), std::min(hi, shi)};
}

IntervalReciprocalBelief MeasurementQuantizer::snap(
    const IntervalReciprocalBelief& z) const {
  // Recover the action index from the recorded action value.
  std::size_t qa = 0;
  double best = std::abs(model_->actions[0] - z.action);
  for (std::size_t i = 1; i < model_->actions.size(); ++i) {
    const double d = std::abs(model_->actions[i] - z.action);
    if (d < best) {
      best = d;
      qa = i;
    }
  }
  const std::size_t j = quantize_level(qa, z.obs);
  return f_posterior(*model_, model_->actions[qa], level(j));
}

std::size_t MeasurementQuantizer::code_index(std::size_t qa,
                                             std::size_t j) const {
  if (qa >= code_of_.size() || j < lo_[qa] || j > hi_[qa])
    throw ConfigError("measurement quantizer: (action, level) not in codebook");
  return code_of_[qa][j - lo_[qa]];
}

IntervalReciprocalBelief MeasurementQuantizer::code_belief(
    std::size_t code) const {
  const CodeEntry& e = codebook_.at(code);
  return f_posterior(*model_, model_->actions[e.action_index],
                     level(e.level_index));
}

double MeasurementQuantizer::k1() const {
  const double top = std::exp(model_->lambda - model_->min_action());
  return 1.0 / std::log((top + model_->tau) / top);
}

double MeasurementQuantizer::k2() const {
  return std::exp(-model_->max_action()) - model_->theta_value();
}

double MeasurementQuantizer::l1() const {
  const double bot = std::exp(-model_->max_action());
  return std::log((bot + model_->tau) / bot);
}

double MeasurementQuantizer::tv_bound(double eps_measured) const {
  return 2.0 * k1() * delta_ / k2() + l1() * eps_measured;
}

}  // namespace beliefgrid
