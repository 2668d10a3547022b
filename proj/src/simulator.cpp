#include "ctk/simulator.hpp"

#include <cmath>
#include <string>

#include "ctk/rng.hpp"

namespace ctk::sim {

void SimulationConfig::validate() const {
  if (n_trials < 1) throw Error("n_trials must be >= 1");
  for (double a : angles_a)
    if (!std::isfinite(a)) throw Error("angles_a must be finite");
  for (double b : angles_b)
    if (!std::isfinite(b)) throw Error("angles_b must be finite");
  if (drift_epsilon < 0.0 || drift_epsilon > 1.0)
    throw Error("drift_epsilon must lie in [0, 1], got " + std::to_string(drift_epsilon));
  if (crosstalk_strength < 0.0 || crosstalk_strength > 1.0)
    throw Error("crosstalk_strength must lie in [0, 1], got " + std::to_string(crosstalk_strength));
}

quantum::Scenario SimulationConfig::scenario() const {
  quantum::Scenario sc;
  sc.mode = mode;
  sc.angles_a = angles_a;
  sc.angles_b = angles_b;
  sc.drift_epsilon = drift_epsilon;
  sc.crosstalk_strength = crosstalk_strength;
  return sc;
}

std::vector<est::ClickRecord> simulate(const SimulationConfig& config) {
  config.validate();
  quantum::Scenario sc = config.scenario();

  // Cell probabilities per context, indexed (i-1)*2 + (j-1).
  std::array<std::array<double, 4>, 4> cells;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      JointDistribution d = sc.context_distribution(i, j);
      for (std::size_t atom = 0; atom < 4; ++atom)
        cells[static_cast<std::size_t>((i - 1) * 2 + (j - 1))][atom] = d.prob(atom);
    }

  rng::SplitMix64 settings_stream = rng::derive_stream(config.seed, 0);
  rng::SplitMix64 outcome_stream = rng::derive_stream(config.seed, 1);

  std::vector<est::ClickRecord> records;
  records.reserve(static_cast<std::size_t>(config.n_trials));
  for (long t = 0; t < config.n_trials; ++t) {
    int setting_a, setting_b;
    if (config.setting_schedule == SettingSchedule::UniformRandom) {
      std::uint64_t bits = settings_stream.next();
      setting_a = 1 + static_cast<int>(bits & 1u);
      setting_b = 1 + static_cast<int>((bits >> 1) & 1u);
    } else {
      int k = static_cast<int>(t % 4);
      setting_a = 1 + k / 2;
      setting_b = 1 + k % 2;
    }

    const auto& ctx = cells[static_cast<std::size_t>((setting_a - 1) * 2 + (setting_b - 1))];
    double u = outcome_stream.next_double();
    std::size_t atom = 0;
    double cum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      cum += ctx[k];
      if (u < cum || k == 3) {
        atom = k;
        break;
      }
    }

    est::ClickRecord r;
    r.trial = t;
    r.setting_a = setting_a;
    r.setting_b = setting_b;
    r.outcome_a = (atom & 2u) ? +1 : -1;
    r.outcome_b = (atom & 1u) ? +1 : -1;
    records.push_back(r);
  }
  return records;
}

CyclicSystem pr_box_system() {
  PairwiseStats aligned(0.0, 0.0, 1.0, 0);
  PairwiseStats anti(0.0, 0.0, -1.0, 0);
  return CyclicSystem(aligned, aligned, aligned, anti);
}

}  // namespace ctk::sim
