#pragma once

#include <string>

#include <json.hpp>

#include "ctk/cbd.hpp"
#include "ctk/estimation.hpp"
#include "ctk/inequalities.hpp"
#include "ctk/probability.hpp"
#include "ctk/quantum.hpp"
#include "ctk/simulator.hpp"

namespace ctk::io {

using nlohmann::json;

// JSON layouts follow the wire contracts: JointDistribution as
// {"arity", "probs"}, PairwiseStats as {"mean_a", "mean_b", "corr",
// "n_trials"}, operators as {"dim", "re", "im"}. NaN (unset z/p fields of an
// analytic report) serializes as null.

json to_json(const JointDistribution& dist);
JointDistribution joint_from_json(const json& j);

json to_json(const PairwiseStats& stats);
PairwiseStats pairwise_from_json(const json& j);

json to_json(const CyclicSystem& system);  // {"n": 4, "contexts": {"C11": ...}}
CyclicSystem system_from_json(const json& j);

json to_json(const est::SignalingReport& report);
json to_json(const ineq::ChshReport& report);
json to_json(const ineq::BdkReport& report);
json to_json(const ineq::FineResult& result);
json to_json(const cbd::CbdReport& report, bool include_coupling = false);

json to_json(const quantum::Matrix& m);

json to_json(const sim::SimulationConfig& config);
sim::SimulationConfig config_from_json(const json& j);

std::string mode_name(quantum::ScenarioMode mode);
quantum::ScenarioMode mode_from_name(const std::string& name);
std::string schedule_name(sim::SettingSchedule schedule);
sim::SettingSchedule schedule_from_name(const std::string& name);

/// FNV-1a 64-bit hash of a byte string, hex-encoded; provenance fingerprint
/// for input files.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace ctk::io
