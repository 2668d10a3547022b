#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ctk/estimation.hpp"
#include "ctk/probability.hpp"

namespace ctk::ineq {

inline constexpr double kVerdictTol = 1e-9;  // absolute tolerance of all verdicts

/// The four one-minus-sign CHSH combinations. values[k] puts the minus on
/// context k in order C11, C12, C21, C22; s_max is the largest of them.
struct ChshReport {
  std::array<double, 4> values{};
  double s_max = 0.0;
  bool satisfied = false;  // s_max <= 2 + 1e-9
};

ChshReport chsh(const CyclicSystem& system);

/// CHSH corrected by the signaling term: contextual iff
/// max_ij |sum of correlations - 2 c_ij| - 2 delta0 > 2 + 1e-9.
struct BdkReport {
  double lhs = 0.0;
  double delta0 = 0.0;
  bool contextual = false;
};

BdkReport bdk(const CyclicSystem& system, const est::SignalingReport& report);

struct FineResult {
  bool feasible = false;
  std::optional<JointDistribution> witness;  // arity 4 over (a1, a2, b1, b2)
};

/// LP feasibility oracle for a joint distribution over the 16 atoms of
/// (a1, a2, b1, b2) whose pairwise (a_i, b_j) marginals reproduce every
/// context. Marginally inconsistent input (delta0 > 1e-9) is refused with
/// SignalingInput: without marginal consistency the program is vacuously
/// infeasible and the verdict would be meaningless.
FineResult jpd_feasible(const CyclicSystem& system);

/// s_max <= 2 sqrt(2) + 1e-9.
bool tsirelson_check(double s_max);

struct NcycleResult {
  double value = 0.0;
  bool satisfied = false;  // value <= n - 2 + 1e-9
};

/// Cyclic noncontextuality inequality |sum_k signs[k] corr[k]| <= n - 2 for
/// n >= 3 and an odd number of negative signs (EvenNegativeSigns otherwise).
/// The n = 4 instance is the CHSH case; larger n follows the same tight
/// family as an extension.
NcycleResult ncycle_evaluate(const std::vector<double>& correlations,
                             const std::vector<int>& signs);

}  // namespace ctk::ineq
