#include "ctk/json_io.hpp"

#include <cstdint>

namespace ctk::io {

json to_json(const JointDistribution& dist) {
  return json{{"arity", dist.arity()}, {"probs", dist.probs()}};
}

JointDistribution joint_from_json(const json& j) {
  return JointDistribution(j.at("arity").get<int>(), j.at("probs").get<std::vector<double>>());
}

json to_json(const PairwiseStats& stats) {
  return json{{"mean_a", stats.mean_a},
              {"mean_b", stats.mean_b},
              {"corr", stats.corr},
              {"n_trials", stats.n_trials}};
}

PairwiseStats pairwise_from_json(const json& j) {
  return PairwiseStats(j.at("mean_a").get<double>(), j.at("mean_b").get<double>(),
                       j.at("corr").get<double>(), j.at("n_trials").get<long>());
}

json to_json(const CyclicSystem& system) {
  json contexts;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      contexts["C" + std::to_string(i) + std::to_string(j)] = to_json(system.at(i, j));
  return json{{"n", system.n()}, {"contexts", contexts}};
}

CyclicSystem system_from_json(const json& j) {
  const json& c = j.at("contexts");
  return CyclicSystem(pairwise_from_json(c.at("C11")), pairwise_from_json(c.at("C12")),
                      pairwise_from_json(c.at("C21")), pairwise_from_json(c.at("C22")));
}

json to_json(const est::SignalingReport& report) {
  return json{{"delta_a", report.delta_a},
              {"delta_b", report.delta_b},
              {"delta0", report.delta0},
              {"z_scores", report.z_scores},
              {"p_values", report.p_values}};
}

json to_json(const ineq::ChshReport& report) {
  return json{{"values", report.values}, {"s_max", report.s_max}, {"satisfied", report.satisfied}};
}

json to_json(const ineq::BdkReport& report) {
  return json{{"lhs", report.lhs}, {"delta0", report.delta0}, {"contextual", report.contextual}};
}

json to_json(const ineq::FineResult& result) {
  json j{{"feasible", result.feasible}};
  if (result.witness)
    j["witness"] = result.witness->probs();
  else
    j["witness"] = json::array();
  return j;
}

json to_json(const cbd::CbdReport& report, bool include_coupling) {
  json j{{"delta_min", report.delta_min},
         {"delta0", report.delta0},
         {"genuine", report.genuine},
         {"contextual", report.contextual}};
  if (include_coupling) j["argmin_coupling"] = to_json(report.argmin_coupling.dist());
  return j;
}

json to_json(const quantum::Matrix& m) {
  std::vector<std::vector<double>> re(static_cast<std::size_t>(m.dim()),
                                      std::vector<double>(static_cast<std::size_t>(m.dim())));
  auto im = re;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) {
      re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c).real();
      im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c).imag();
    }
  return json{{"dim", m.dim()}, {"re", re}, {"im", im}};
}

std::string mode_name(quantum::ScenarioMode mode) {
  switch (mode) {
    case quantum::ScenarioMode::Clean: return "clean";
    case quantum::ScenarioMode::Crosstalk: return "crosstalk";
    case quantum::ScenarioMode::Drift: return "drift";
  }
  throw Error("unknown scenario mode");
}

quantum::ScenarioMode mode_from_name(const std::string& name) {
  if (name == "clean") return quantum::ScenarioMode::Clean;
  if (name == "crosstalk") return quantum::ScenarioMode::Crosstalk;
  if (name == "drift") return quantum::ScenarioMode::Drift;
  throw Error("unknown mode '" + name + "' (expected clean, crosstalk, or drift)");
}

std::string schedule_name(sim::SettingSchedule schedule) {
  return schedule == sim::SettingSchedule::UniformRandom ? "uniform" : "roundrobin";
}

sim::SettingSchedule schedule_from_name(const std::string& name) {
  if (name == "uniform") return sim::SettingSchedule::UniformRandom;
  if (name == "roundrobin") return sim::SettingSchedule::RoundRobin;
  throw Error("unknown schedule '" + name + "' (expected uniform or roundrobin)");
}

json to_json(const sim::SimulationConfig& config) {
  return json{{"mode", mode_name(config.mode)},
              {"angles_a", config.angles_a},
              {"angles_b", config.angles_b},
              {"n_trials", config.n_trials},
              {"seed", config.seed},
              {"setting_schedule", schedule_name(config.setting_schedule)},
              {"drift_epsilon", config.drift_epsilon},
              {"crosstalk_strength", config.crosstalk_strength}};
}

sim::SimulationConfig config_from_json(const json& j) {
  sim::SimulationConfig c;
  c.mode = mode_from_name(j.at("mode").get<std::string>());
  c.angles_a = j.at("angles_a").get<std::array<double, 2>>();
  c.angles_b = j.at("angles_b").get<std::array<double, 2>>();
  c.n_trials = j.at("n_trials").get<long>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.setting_schedule = schedule_from_name(j.at("setting_schedule").get<std::string>());
  c.drift_epsilon = j.at("drift_epsilon").get<double>();
  c.crosstalk_strength = j.at("crosstalk_strength").get<double>();
  return c;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace ctk::io
