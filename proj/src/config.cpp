#include "beliefgrid/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "beliefgrid/rollout.hpp"
#include "beliefgrid/serialize.hpp"

namespace beliefgrid {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace((unsigned char)s[b])) ++b;
  while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
  return s.substr(b, e - b);
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

using Doc = std::map<std::string, std::map<std::string, Entry>>;

Doc parse_ini(const std::string& text) {
  Doc doc;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t cut = raw.find_first_of("#;");
    std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) +
                          ": empty section name");
      doc[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": entry before any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    auto [it, inserted] = doc[section].emplace(key, Entry{value, lineno});
    if (!inserted)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        key + "' in [" + section + "]");
  }
  return doc;
}

class Fields {
 public:
  explicit Fields(const Doc& doc) : doc_(doc) {}

  const Entry* find(const std::string& sec, const std::string& key) {
    used_[sec].insert(key);
    auto s = doc_.find(sec);
    if (s == doc_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  std::string require(const std::string& sec, const std::string& key) {
    const Entry* e = find(sec, key);
    if (!e)
      throw ConfigError("[" + sec + "] missing field '" + key + "'");
    return e->value;
  }

  std::string text(const std::string& sec, const std::string& key,
                   const std::string& fallback) {
    const Entry* e = find(sec, key);
    return e ? e->value : fallback;
  }

  double real(const std::string& sec, const std::string& key, double fallback) {
    const Entry* e = find(sec, key);
    return e ? parse_real(sec, key, *e) : fallback;
  }

  double real_required(const std::string& sec, const std::string& key) {
    require(sec, key);
    return parse_real(sec, key, *find(sec, key));
  }

  long long integer(const std::string& sec, const std::string& key,
                    long long fallback) {
    const Entry* e = find(sec, key);
    return e ? parse_int(sec, key, *e) : fallback;
  }

  std::vector<long long> int_list(const std::string& sec,
                                  const std::string& key) {
    const Entry* e = find(sec, key);
    std::vector<long long> out;
    if (!e) return out;
    std::string item;
    std::istringstream ss(e->value);
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty())
        throw ConfigError(where(sec, key, *e) + ": empty list item");
      out.push_back(parse_int(sec, key, Entry{item, e->line}));
    }
    if (out.empty())
      throw ConfigError(where(sec, key, *e) + ": empty list");
    return out;
  }

  /// Every present key must have been consulted; unknown keys are typos.
  void check_unknown() const {
    for (const auto& [sec, entries] : doc_) {
      auto u = used_.find(sec);
      for (const auto& [key, entry] : entries) {
        if (u == used_.end() || !u->second.count(key))
          throw ConfigError("line " + std::to_string(entry.line) +
                            ": unknown key '" + key + "' in [" + sec + "]");
      }
    }
  }

 private:
  static std::string where(const std::string& sec, const std::string& key,
                           const Entry& e) {
    return "line " + std::to_string(e.line) + " ([" + sec + "] " + key + ")";
  }

  static double parse_real(const std::string& sec, const std::string& key,
                           const Entry& e) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(where(sec, key, e) + ": expected a real number, got '" +
                        e.value + "'");
    }
  }

  static long long parse_int(const std::string& sec, const std::string& key,
                             const Entry& e) {
    long long v = 0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end)
      throw ConfigError(where(sec, key, e) + ": expected an integer, got '" +
                        e.value + "'");
    return v;
  }

  const Doc& doc_;
  std::map<std::string, std::set<std::string>> used_;
};

SimplexNorm parse_metric(const std::string& s) {
  if (s == "l1") return SimplexNorm::L1;
  if (s == "l2") return SimplexNorm::L2;
  if (s == "linf") return SimplexNorm::Linf;
  throw ConfigError("[quantization] metric must be l1, l2, or linf; got '" +
                    s + "'");
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  const Doc doc = parse_ini(text);
  Fields f(doc);
  RunConfig cfg;

  cfg.kind = f.require("model", "kind");
  if (cfg.kind == "machine-repair") {
    cfg.repair.epsilon = f.real("model", "epsilon", cfg.repair.epsilon);
    cfg.repair.kappa = f.real("model", "kappa", cfg.repair.kappa);
    cfg.repair.alpha = f.real("model", "alpha", cfg.repair.alpha);
    cfg.repair.repair_cost =
        f.real("model", "repair_cost", cfg.repair.repair_cost);
    cfg.repair.downtime_cost =
        f.real("model", "downtime_cost", cfg.repair.downtime_cost);
    cfg.repair.repaired_stays_working = f.real(
        "model", "repaired_stays_working", cfg.repair.repaired_stays_working);
    cfg.repair.unrepaired_stays_broken = f.real(
        "model", "unrepaired_stays_broken", cfg.repair.unrepaired_stays_broken);
    for (const double p : {cfg.repair.repaired_stays_working,
                           cfg.repair.unrepaired_stays_broken})
      if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(
            "[model] repaired_stays_working and unrepaired_stays_broken "
            "must be probabilities in [0, 1]");
    cfg.repair.discount = f.real_required("model", "discount");
  } else if (cfg.kind == "population") {
    cfg.pop_lambda = f.real("model", "lambda", cfg.pop_lambda);
    cfg.pop_tau = f.real("model", "tau", cfg.pop_tau);
    cfg.pop_discount = f.real_required("model", "discount");
    cfg.utility = f.text("model", "utility", cfg.utility);
    if (cfg.utility != "quadratic")
      throw ConfigError("[model] utility: only 'quadratic' is configurable; "
                        "other shapes are library-level");
  } else {
    throw ConfigError("[model] kind must be machine-repair or population; "
                      "got '" + cfg.kind + "'");
  }

  const bool has_n = f.find("quantization", "n") != nullptr;
  const bool has_list = f.find("quantization", "n_list") != nullptr;
  if (has_n && has_list)
    throw ConfigError("[quantization] give n or n_list, not both");
  if (has_list)
    cfg.n_list = f.int_list("quantization", "n_list");
  else
    cfg.n_list = {f.integer("quantization", "n", 100)};
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] < 1)
      throw ConfigError("[quantization] resolutions must be >= 1");
    if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
      throw ConfigError("[quantization] n_list must be strictly increasing");
  }
  cfg.metric = parse_metric(f.text("quantization", "metric", "l2"));
  const std::string weighting = f.text("quantization", "weighting", "dirac");
  if (weighting == "dirac")
    cfg.weighting.kind = WeightingMeasure::Kind::DiracAtGridPoint;
  else if (weighting == "uniform")
    cfg.weighting.kind = WeightingMeasure::Kind::UniformSamples;
  else
    throw ConfigError("[quantization] weighting must be dirac or uniform; "
                      "got '" + weighting + "'");
  const long long samples = f.integer("quantization", "samples", 5);
  if (samples < 1)
    throw ConfigError("[quantization] samples must be >= 1");
  cfg.weighting.samples = std::size_t(samples);
  const long long levels = f.integer("quantization", "action_levels", 20);
  if (levels < 1)
    throw ConfigError("[quantization] action_levels must be >= 1");
  cfg.action_levels = std::size_t(levels);
  cfg.theta = f.real("quantization", "theta", 0.0);

  cfg.tolerance = f.real("solver", "tolerance", 1e-9);
  if (!(cfg.tolerance > 0.0))
    throw ConfigError("[solver] tolerance must be positive");
  const long long cap = f.integer("solver", "iteration_cap", 1000000);
  if (cap < 1) throw ConfigError("[solver] iteration_cap must be >= 1");
  cfg.iteration_cap = std::size_t(cap);

  cfg.seed = std::uint64_t(f.integer("eval", "seed", 1));
  const long long reps = f.integer("eval", "replications", 10000);
  if (reps < 1) throw ConfigError("[eval] replications must be >= 1");
  cfg.replications = std::size_t(reps);
  const std::string horizon = f.text("eval", "horizon", "auto");
  if (horizon == "auto") {
    cfg.horizon = 0;
  } else {
    cfg.horizon = f.integer("eval", "horizon", 0);
    if (cfg.horizon < 1)
      throw ConfigError("[eval] horizon must be 'auto' or an integer >= 1");
  }
  const long long init_state = f.integer("eval", "initial_state", 1);
  if (init_state < 0)
    throw ConfigError("[eval] initial_state must be >= 0");
  cfg.initial_state = std::size_t(init_state);
  cfg.initial_point = f.real("eval", "initial_point", 2.0);

  cfg.out_dir = f.text("output", "directory", ".");

  f.check_unknown();

  if (!cfg.is_population() && cfg.initial_state >= 2)
    throw ConfigError("[eval] initial_state must be 0 or 1 for the repair "
                      "model");
  return cfg;
}

std::string emit_run_config(const RunConfig& cfg) {
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  };
  out += "[model]\n";
  kv("kind", cfg.kind);
  if (cfg.is_population()) {
    kv("lambda", format_real(cfg.pop_lambda));
    kv("tau", format_real(cfg.pop_tau));
    kv("discount", format_real(cfg.pop_discount));
    kv("utility", cfg.utility);
  } else {
    kv("epsilon", format_real(cfg.repair.epsilon));
    kv("kappa", format_real(cfg.repair.kappa));
    kv("alpha", format_real(cfg.repair.alpha));
    kv("repair_cost", format_real(cfg.repair.repair_cost));
    kv("downtime_cost", format_real(cfg.repair.downtime_cost));
    kv("repaired_stays_working", format_real(cfg.repair.repaired_stays_working));
    kv("unrepaired_stays_broken", format_real(cfg.repair.unrepaired_stays_broken));
    kv("discount", format_real(cfg.repair.discount));
  }
  out += "\n[quantization]\n";
  std::string ns;
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (i) ns += ',';
    ns += std::to_string(cfg.n_list[i]);
  }
  kv("n_list", ns);
  kv("metric", norm_name(cfg.metric));
  kv("weighting",
     cfg.weighting.kind == WeightingMeasure::Kind::DiracAtGridPoint
         ? "dirac"
         : "uniform");
  kv("samples", std::to_string(cfg.weighting.samples));
  if (cfg.is_population()) {
    kv("action_levels", std::to_string(cfg.action_levels));
    kv("theta", format_real(cfg.theta));
  }
  out += "\n[solver]\n";
  kv("tolerance", format_real(cfg.tolerance));
  kv("iteration_cap", std::to_string(cfg.iteration_cap));
  out += "\n[eval]\n";
  kv("seed", std::to_string(cfg.seed));
  kv("replications", std::to_string(cfg.replications));
  kv("horizon", cfg.horizon == 0 ? "auto" : std::to_string(cfg.horizon));
  if (cfg.is_population())
    kv("initial_point", format_real(cfg.initial_point));
  else
    kv("initial_state", std::to_string(cfg.initial_state));
  out += "\n[output]\n";
  kv("directory", cfg.out_dir);
  return out;
}

FinitePomdp RunConfig::make_finite() const {
  if (is_population())
    throw ConfigError("config describes the population model, not a finite "
                      "one");
  return machine_repair(repair);
}

PopulationModel RunConfig::make_population() const {
  if (!is_population())
    throw ConfigError("config describes a finite model, not the population "
                      "one");
  PopulationModel m =
      population_growth(pop_lambda, pop_tau, pop_discount, action_levels);
  m.theta = theta;
  m.validate();
  if (!(initial_point > 0.0) || initial_point > m.state_bound())
    throw ConfigError("[eval] initial_point must lie in (0, " +
                      format_real(m.state_bound()) + "]");
  return m;
}

std::size_t RunConfig::resolved_horizon() const {
  if (horizon > 0) return std::size_t(horizon);
  if (is_population()) {
    const PopulationModel m = make_population();
    return auto_horizon(m.discount, m.max_abs_cost(), 1e-9);
  }
  const FinitePomdp m = make_finite();
  return auto_horizon(m.discount, m.max_abs_cost(), 1e-9);
}

}  // namespace beliefgrid
