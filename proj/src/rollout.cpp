#include "beliefgrid/rollout.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "beliefgrid/belief.hpp"
#include "beliefgrid/rng.hpp"

namespace beliefgrid {

namespace {

void check_cfg(const RolloutConfig& cfg) {
  if (cfg.horizon < 1) throw ConfigError("rollout: horizon must be >= 1");
  if (cfg.replications < 1)
    throw ConfigError("rollout: replications must be >= 1");
}

RolloutReport summarize(const std::vector<double>& returns,
                        const RolloutConfig& cfg, double discount,
                        double max_abs_cost) {
  RolloutReport rep;
  rep.replications = returns.size();
  rep.seed = cfg.seed;
  rep.horizon = cfg.horizon;
  rep.discount = discount;
  rep.truncation_bound = std::pow(discount, double(cfg.horizon)) *
                         max_abs_cost / (1.0 - discount);
  double sum = 0.0;
  for (double r : returns) sum += r;
  rep.mean = sum / double(returns.size());
  double ss = 0.0;
  for (double r : returns) ss += (r - rep.mean) * (r - rep.mean);
  if (returns.size() > 1)
    rep.stderr_mean =
        std::sqrt(ss / double(returns.size() - 1) / double(returns.size()));
  return rep;
}

}  // namespace

std::size_t auto_horizon(double discount, double max_abs_cost, double cut) {
  if (!(discount > 0.0 && discount < 1.0))
    throw ConfigError("auto horizon: discount must be in (0, 1)");
  if (!(cut > 0.0)) throw ConfigError("auto horizon: cut must be positive");
  std::size_t t = 1;
  double bound = discount * max_abs_cost / (1.0 - discount);
  while (bound > cut && t < 100000) {
    bound *= discount;
    ++t;
  }
  return t;
}

RolloutReport rollout(const FinitePomdp& model,
                      const ExtendedLatticePolicy& policy,
                      const RolloutConfig& cfg) {
  model.validate();
  check_cfg(cfg);
  if (cfg.initial_state >= model.num_states)
    throw ConfigError("rollout: initial state out of range");

  const Rng root(cfg.seed);
  std::vector<double> returns(cfg.replications, 0.0);
  for (std::size_t r = 0; r < cfg.replications; ++r) {
    Rng rng = root.substream(r);
    BeliefVector z;
    z.w.assign(model.num_states, 0.0);
    z.w[cfg.initial_state] = 1.0;
    std::size_t x = cfg.initial_state;
    double acc = 0.0;
    double disc = 1.0;
    try {
      for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const std::size_t a = policy.action(z);
        acc += disc * model.cost[x][a];
        disc *= model.discount;
        x = rng.categorical(model.transition[x][a]);
        const std::size_t y = rng.categorical(model.channel[x]);
        z = filter_update(model, z, a, y);
      }
    } catch (const ZeroLikelihoodError& e) {
      throw ZeroLikelihoodError(std::string(e.what()) + " [replication " +
                                std::to_string(r) + "]");
    }
    returns[r] = acc;
  }
  return summarize(returns, cfg, model.discount, model.max_abs_cost());
}

RolloutReport rollout(const PopulationModel& model,
                      const ExtendedMeasurementPolicy& policy,
                      const RolloutConfig& cfg) {
  model.validate();
  check_cfg(cfg);

  const Rng root(cfg.seed);
  std::vector<double> returns(cfg.replications, 0.0);
  for (std::size_t r = 0; r < cfg.replications; ++r) {
    Rng rng = root.substream(r);
    double x = cfg.initial_point;
    bool first = true;
    IntervalReciprocalBelief z;
    double acc = 0.0;
    double disc = 1.0;
    try {
      for (std::size_t t = 0; t < cfg.horizon; ++t) {
        const std::size_t ai = first ? policy.dirac_action(model, x)
                                     : policy.action(z);
        const double a = model.actions[ai];
        acc += disc * model.utility(x - a);
        disc *= model.discount;
        x = std::exp(-a + rng.uniform(0.0, model.lambda));
        const double y = x + rng.uniform(0.0, model.tau);
        z = f_posterior(model, a, y);
        first = false;
      }
    } catch (const EmptySupportError& e) {
      throw EmptySupportError(std::string(e.what()) + " [replication " +
                              std::to_string(r) + "]");
    }
    returns[r] = acc;
  }
  return summarize(returns, cfg, model.discount, model.max_abs_cost());
}

}  // namespace beliefgrid
