#include "beliefgrid/model.hpp"

#include <algorithm>
#include <cmath>

namespace beliefgrid {

namespace {

constexpr double kRowTol = 1e-9;

void check_row(const std::vector<double>& row, std::size_t expect,
               const std::string& what) {
  if (row.size() != expect)
    throw NumericError(what + ": expected " + std::to_string(expect) +
                       " entries, got " + std::to_string(row.size()));
  double sum = 0.0;
  for (double v : row) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw NumericError(what + ": negative or non-finite probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowTol)
    throw NumericError(what + ": row sums to " + std::to_string(sum));
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void FinitePomdp::validate() const {
  if (num_states == 0 || num_actions == 0 || num_obs == 0)
    throw NumericError("model: empty state, action, or observation set");
  if (!(discount > 0.0) || !(discount < 1.0))
    throw NumericError("model: discount must lie in (0, 1)");
  if (transition.size() != num_states || channel.size() != num_states ||
      cost.size() != num_states)
    throw NumericError("model: table sizes disagree with num_states");
  for (std::size_t x = 0; x < num_states; ++x) {
    if (transition[x].size() != num_actions || cost[x].size() != num_actions)
      throw NumericError("model: table sizes disagree with num_actions");
    for (std::size_t a = 0; a < num_actions; ++a) {
      check_row(transition[x][a], num_states,
                "transition[" + std::to_string(x) + "][" + std::to_string(a) + "]");
      if (!std::isfinite(cost[x][a]))
        throw NumericError("model: non-finite cost entry");
    }
    check_row(channel[x], num_obs, "channel[" + std::to_string(x) + "]");
  }
}

double FinitePomdp::max_abs_cost() const {
  double best = 0.0;
  for (const auto& row : cost)
    for (double v : row) best = std::max(best, std::abs(v));
  return best;
}

FinitePomdp machine_repair(const MachineRepairParams& p) {
  if (!(p.epsilon >= 0.0) || !(p.epsilon < 0.5))
    throw ConfigError("machine repair: epsilon must lie in [0, 0.5)");
  if (!in_unit(p.kappa) || !in_unit(p.alpha) ||
      !in_unit(p.repaired_stays_working) || !in_unit(p.unrepaired_stays_broken))
    throw ConfigError("machine repair: probabilities must lie in [0, 1]");
  if (!(p.discount > 0.0) || !(p.discount < 1.0))
    throw ConfigError("machine repair: discount must lie in (0, 1)");
  if (!(p.repair_cost >= 0.0) || !(p.downtime_cost >= 0.0) ||
      !std::isfinite(p.repair_cost) || !std::isfinite(p.downtime_cost))
    throw ConfigError("machine repair: costs must be finite and nonnegative");

  FinitePomdp m;
  m.num_states = 2;  // 0 broken, 1 working
  m.num_actions = 2; // 0 idle, 1 repair
  m.num_obs = 2;
  m.discount = p.discount;
  m.objective = Objective::Minimize;

  const double q = p.unrepaired_stays_broken;
  const double w = p.repaired_stays_working;
  m.transition = {
      {{q, 1.0 - q}, {1.0 - p.kappa, p.kappa}},              // from broken
      {{1.0 - p.alpha, p.alpha}, {1.0 - w, w}},              // from working
  };
  m.channel = {
      {1.0 - p.epsilon, p.epsilon},
      {p.epsilon, 1.0 - p.epsilon},
  };
  m.cost = {
      {p.downtime_cost, p.repair_cost + p.downtime_cost},
      {0.0, p.repair_cost},
  };
  m.validate();
  return m;
}

double PopulationModel::state_bound() const { return std::exp(lambda); }
double PopulationModel::obs_bound() const { return state_bound() + tau; }

double PopulationModel::min_action() const { return actions.front(); }
double PopulationModel::max_action() const { return actions.back(); }

double PopulationModel::theta_value() const {
  if (theta > 0.0) return theta;
  return std::min(0.01, 0.5 * std::exp(-max_action()));
}

double PopulationModel::max_abs_cost() const {
  // |x - a| over (0, L] x [a_min, a_max] is bounded by max(L, a_max); the
  // utility is sampled over that symmetric range (exact for monotone-in-|t|
  // shapes such as the quadratic).
  const double span = std::max(state_bound(), max_action());
  double best = 0.0;
  const int steps = 512;
  for (int i = 0; i <= steps; ++i) {
    const double t = -span + 2.0 * span * double(i) / steps;
    best = std::max(best, std::abs(utility(t)));
  }
  return best;
}

void PopulationModel::validate() const {
  if (!(lambda > 0.0) || !(tau > 0.0))
    throw ConfigError("population: lambda and tau must be positive");
  if (!(discount > 0.0) || !(discount < 1.0))
    throw ConfigError("population: discount must lie in (0, 1)");
  if (actions.empty())
    throw ConfigError("population: action grid is empty");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!(actions[i] > 0.0) || !(actions[i] <= state_bound()))
      throw ConfigError("population: actions must lie in (0, e^lambda]");
    if (i > 0 && !(actions[i] > actions[i - 1]))
      throw ConfigError("population: action grid must be strictly increasing");
  }
  if (theta > 0.0 && !(std::exp(-max_action()) - theta > 0.0))
    throw ConfigError("population: theta must satisfy e^{-a_max} - theta > 0");
  if (utility.kind == Utility::Kind::Custom && !utility.fn)
    throw ConfigError("population: custom utility has no function");
}

PopulationModel population_growth(double lambda, double tau, double discount,
                                  std::size_t action_count, Utility u) {
  if (action_count == 0)
    throw ConfigError("population: action count must be positive");
  PopulationModel m;
  m.lambda = lambda;
  m.tau = tau;
  m.discount = discount;
  m.utility = u;
  const double L = std::exp(lambda);
  m.actions.resize(action_count);
  for (std::size_t i = 0; i < action_count; ++i)
    m.actions[i] = (double(i) + 0.5) * L / double(action_count);
  m.validate();
  return m;
}

AssumptionReport validate_assumptions(const FinitePomdp& model) {
  AssumptionReport r;
  auto add = [&r](std::string name, bool pass, std::string detail) {
    r.clauses.push_back({std::move(name), pass, std::move(detail)});
  };

  bool costs_ok = true;
  double max_cost = 0.0;
  for (const auto& row : model.cost)
    for (double v : row) {
      if (!std::isfinite(v)) costs_ok = false;
      max_cost = std::max(max_cost, std::abs(v));
    }
  add("bounded-cost", costs_ok,
      costs_ok ? "max |c| = " + std::to_string(max_cost) : "non-finite entry");

  bool stochastic = true;
  std::string bad;
  auto check = [&](const std::vector<double>& row, const std::string& what) {
    double s = 0.0;
    bool nn = true;
    for (double v : row) {
      s += v;
      nn = nn && v >= 0.0 && std::isfinite(v);
    }
    if (!nn || std::abs(s - 1.0) > kRowTol) {
      stochastic = false;
      if (bad.empty()) bad = what + " sums to " + std::to_string(s);
    }
  };
  for (std::size_t x = 0; x < model.transition.size(); ++x) {
    for (std::size_t a = 0; a < model.transition[x].size(); ++a)
      check(model.transition[x][a],
            "transition[" + std::to_string(x) + "][" + std::to_string(a) + "]");
    if (x < model.channel.size())
      check(model.channel[x], "channel[" + std::to_string(x) + "]");
  }
  add("stochasticity", stochastic, stochastic ? "all rows sum to 1" : bad);

  // On finite spaces the topological clauses hold automatically.
  add("kernel-weak-continuity", true, "finite state space (automatic)");
  add("channel-tv-continuity", true, "finite state space (automatic)");
  add("compact-actions", model.transition.empty() || !model.transition[0].empty(),
      "finite action set");
  add("moment-growth", true, "v = 1, growth constant 1");
  add("initial-moment", true, "Dirac initial beliefs have unit moment");
  add("discount", model.discount > 0.0 && model.discount < 1.0,
      "beta = " + std::to_string(model.discount));
  return r;
}

AssumptionReport validate_assumptions(const PopulationModel& model) {
  AssumptionReport r;
  auto add = [&r](std::string name, bool pass, std::string detail) {
    r.clauses.push_back({std::move(name), pass, std::move(detail)});
  };

  bool params_ok = true;
  std::string why = "lambda, tau positive; actions in (0, e^lambda], increasing";
  try {
    model.validate();
  } catch (const std::exception& e) {
    params_ok = false;
    why = e.what();
  }
  add("parameter-ranges", params_ok, why);

  double max_u = params_ok ? model.max_abs_cost() : 0.0;
  add("bounded-cost", params_ok && std::isfinite(max_u),
      "max |u| over the reachable range = " + std::to_string(max_u));

  // x' = exp(-a + v) has a continuous bounded density in (x, a); y = x + xi
  // has a density continuous in x, giving total-variation continuity.
  add("kernel-weak-continuity", true,
      "uniform noise density, continuous in (x, a)");
  add("channel-tv-continuity", true, "additive uniform observation noise");
  add("compact-actions", params_ok, "finite action grid inside (0, e^lambda]");
  add("moment-growth", true, "v = 1, growth constant 1");
  add("initial-moment", true, "Dirac initial beliefs have unit moment");
  add("discount", model.discount > 0.0 && model.discount < 1.0,
      "beta = " + std::to_string(model.discount));
  if (params_ok) {
    const double margin = std::exp(-model.max_action()) - model.theta_value();
    add("theta-margin", margin > 0.0,
        "e^{-a_max} - theta = " + std::to_string(margin));
  }
  return r;
}

}  // namespace beliefgrid
