#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ctk/estimation.hpp"
#include "ctk/probability.hpp"
#include "ctk/quantum.hpp"

namespace ctk::sim {

enum class SettingSchedule { UniformRandom, RoundRobin };

struct SimulationConfig {
  quantum::ScenarioMode mode = quantum::ScenarioMode::Clean;
  std::array<double, 2> angles_a = quantum::canonical_angles_a();
  std::array<double, 2> angles_b = quantum::canonical_angles_b();
  long n_trials = 1;
  std::uint64_t seed = 0;
  SettingSchedule setting_schedule = SettingSchedule::UniformRandom;
  double drift_epsilon = 0.0;       // Drift mode only, in [0, 1]
  double crosstalk_strength = 0.0;  // Crosstalk mode only, in [0, 1]

  void validate() const;  // throws Error on range violations
  quantum::Scenario scenario() const;
};

/// Deterministic Bohm-Bell click generator. The four context distributions
/// come from the quantum scenario; settings are drawn from stream 0 of the
/// seed and outcomes from stream 1 (see rng::derive_stream), so extending a
/// run never perturbs earlier records and identical configs produce
/// byte-identical CSV output. Outcomes are sampled by inverse CDF over the
/// cells in the fixed order (-1,-1), (-1,+1), (+1,-1), (+1,+1).
std::vector<est::ClickRecord> simulate(const SimulationConfig& config);

/// The no-signaling system with correlations (1, 1, 1, -1) and flat
/// marginals: the algebraic-maximum witness (CHSH value 4).
CyclicSystem pr_box_system();

}  // namespace ctk::sim
