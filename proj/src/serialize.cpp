#include "beliefgrid/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace beliefgrid {

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc())
    throw NumericError("could not format a real value");
  return std::string(buf, ptr);
}

std::string belief_record(const BeliefVector& z) {
  std::string out = "simplex";
  for (double w : z.w) {
    out += ' ';
    out += format_real(w);
  }
  return out;
}

std::string belief_record(const IntervalReciprocalBelief& z) {
  return "interval " + format_real(z.lower) + ' ' + format_real(z.upper) +
         ' ' + format_real(z.action) + ' ' + format_real(z.obs);
}

std::string grid_records(const LatticeGrid& grid) {
  std::string out;
  for (const auto& z : grid.points) {
    out += belief_record(z);
    out += '\n';
  }
  return out;
}

std::string grid_records(const MeasurementGrid& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += belief_record(grid.quantizer.code_belief(i));
    out += '\n';
  }
  return out;
}

namespace {

constexpr const char* kSolutionFormat = "beliefgrid-solution-1";
constexpr const char* kModelFormat = "beliefgrid-model-1";
constexpr const char* kRolloutFormat = "beliefgrid-rollout-1";

}  // namespace

std::string solution_to_json(const SolutionFile& file) {
  nlohmann::json j;
  j["format"] = kSolutionFormat;
  j["model_kind"] = file.model_kind;
  j["n"] = file.n;
  j["grid_size"] = file.grid_size;
  j["values"] = file.sol.value.values;
  j["policy"] = file.sol.policy.actions;
  j["residual"] = file.sol.value.residual;
  j["iterations"] = file.sol.value.iterations;
  j["value_at_init"] = file.value_at_init;
  j["config_echo"] = file.config_echo;
  return j.dump(2) + "\n";
}

SolutionFile solution_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("solution file: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kSolutionFormat)
      throw ConfigError("solution file: unknown format tag");
    SolutionFile file;
    file.model_kind = j.at("model_kind").get<std::string>();
    file.n = j.at("n").get<long long>();
    file.grid_size = j.at("grid_size").get<std::size_t>();
    file.sol.value.values = j.at("values").get<std::vector<double>>();
    file.sol.policy.actions =
        j.at("policy").get<std::vector<std::size_t>>();
    file.sol.value.residual = j.at("residual").get<double>();
    file.sol.value.iterations = j.at("iterations").get<std::size_t>();
    file.value_at_init = j.at("value_at_init").get<double>();
    file.config_echo = j.at("config_echo").get<std::string>();
    if (file.sol.value.values.size() != file.grid_size ||
        file.sol.policy.actions.size() != file.grid_size)
      throw ConfigError("solution file: sizes disagree with grid_size");
    return file;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("solution file: ") + e.what());
  }
}

std::string grid_model_to_json(const GridModel& gm,
                               const std::vector<std::string>& state_records) {
  nlohmann::json j;
  j["format"] = kModelFormat;
  j["num_states"] = gm.num_states;
  j["num_actions"] = gm.num_actions;
  j["discount"] = gm.discount;
  j["objective"] = objective_name(gm.objective);
  j["action_factored"] = gm.action_factored;
  nlohmann::json coo = nlohmann::json::array();
  const std::size_t blocks = gm.action_factored ? 1 : gm.num_states;
  for (std::size_t i = 0; i < blocks; ++i)
    for (std::size_t a = 0; a < gm.num_actions; ++a)
      for (std::size_t k = 0; k < gm.num_states; ++k)
        if (gm.transition[i][a][k] != 0.0)
          coo.push_back({i, a, k, gm.transition[i][a][k]});
  j["transitions"] = std::move(coo);
  j["costs"] = gm.cost;
  if (!state_records.empty()) j["states"] = state_records;
  return j.dump(2) + "\n";
}

std::string rollout_to_json(const RolloutReport& rep) {
  nlohmann::json j;
  j["format"] = kRolloutFormat;
  j["mean"] = rep.mean;
  j["stderr"] = rep.stderr_mean;
  j["truncation_bound"] = rep.truncation_bound;
  j["replications"] = rep.replications;
  j["seed"] = rep.seed;
  j["horizon"] = rep.horizon;
  j["discount"] = rep.discount;
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace beliefgrid
