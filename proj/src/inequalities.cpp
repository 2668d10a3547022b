#include "ctk/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctk/linprog.hpp"

namespace ctk::ineq {

ChshReport chsh(const CyclicSystem& system) {
  std::array<double, 4> c = system.correlations();
  double sum = c[0] + c[1] + c[2] + c[3];
  ChshReport rep;
  for (std::size_t k = 0; k < 4; ++k) {
    rep.values[k] = std::abs(sum - 2.0 * c[k]);
    rep.s_max = std::max(rep.s_max, rep.values[k]);
  }
  rep.satisfied = rep.s_max <= 2.0 + kVerdictTol;
  return rep;
}

BdkReport bdk(const CyclicSystem& system, const est::SignalingReport& report) {
  BdkReport rep;
  rep.lhs = chsh(system).s_max;
  rep.delta0 = report.delta0;
  rep.contextual = rep.lhs - 2.0 * rep.delta0 > 2.0 + kVerdictTol;
  return rep;
}

FineResult jpd_feasible(const CyclicSystem& system) {
  double delta0 = est::signaling_deltas(system).delta0;
  if (delta0 > kVerdictTol)
    throw SignalingInput("marginal inconsistency delta0 = " + std::to_string(delta0) +
                         "; the JPD question presupposes marginal consistency");

  // Variables: the 16 atoms of (a1, a2, b1, b2), variable 0 most significant.
  // Moment rows pin each single-observable mean (averaged over its two
  // contexts, which agree within delta0) and each context correlation.
  constexpr int kAtoms = 16;
  auto sign_of = [](int atom, int var) { return ((atom >> (3 - var)) & 1) ? +1.0 : -1.0; };

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  rows.emplace_back(kAtoms, 1.0);
  rhs.push_back(1.0);

  for (int i = 0; i < 2; ++i) {
    std::vector<double> row(kAtoms);
    for (int atom = 0; atom < kAtoms; ++atom) row[static_cast<std::size_t>(atom)] = sign_of(atom, i);
    rows.push_back(std::move(row));
    rhs.push_back(0.5 * (system.at(i + 1, 1).mean_a + system.at(i + 1, 2).mean_a));
  }
  for (int j = 0; j < 2; ++j) {
    std::vector<double> row(kAtoms);
    for (int atom = 0; atom < kAtoms; ++atom)
      row[static_cast<std::size_t>(atom)] = sign_of(atom, 2 + j);
    rows.push_back(std::move(row));
    rhs.push_back(0.5 * (system.at(1, j + 1).mean_b + system.at(2, j + 1).mean_b));
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::vector<double> row(kAtoms);
      for (int atom = 0; atom < kAtoms; ++atom)
        row[static_cast<std::size_t>(atom)] = sign_of(atom, i) * sign_of(atom, 2 + j);
      rows.push_back(std::move(row));
      rhs.push_back(system.at(i + 1, j + 1).corr);
    }

  lp::Solution sol = lp::feasibility(rows, rhs);
  FineResult result;
  result.feasible = sol.status == lp::Status::Optimal;
  if (result.feasible) {
    // The solver's residual contract (1e-8) is looser than the distribution
    // normalization gate (1e-9); rescale before constructing.
    double sum = 0.0;
    for (double& v : sol.x) {
      v = std::max(v, 0.0);
      sum += v;
    }
    for (double& v : sol.x) v /= sum;
    result.witness = JointDistribution(4, sol.x);
  }
  return result;
}

bool tsirelson_check(double s_max) {
  if (s_max < 0.0) throw Error("s_max must be nonnegative");
  return s_max <= 2.0 * std::sqrt(2.0) + kVerdictTol;
}

NcycleResult ncycle_evaluate(const std::vector<double>& correlations,
                             const std::vector<int>& signs) {
  std::size_t n = correlations.size();
  if (n < 3) throw Error("n-cycle evaluation needs n >= 3");
  if (signs.size() != n) throw DimensionMismatch("signs and correlations differ in length");

  int negatives = 0;
  for (int s : signs) {
    if (s != -1 && s != +1) throw Error("signs must be -1 or +1");
    if (s == -1) ++negatives;
  }
  if (negatives % 2 == 0)
    throw EvenNegativeSigns("tight cyclic inequalities need an odd number of negative signs");

  double value = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(correlations[k]) > 1.0 + kVerdictTol)
      throw Error("correlation " + std::to_string(correlations[k]) + " outside [-1, 1]");
    value += signs[k] * correlations[k];
  }

  NcycleResult res;
  res.value = std::abs(value);
  res.satisfied = res.value <= static_cast<double>(n) - 2.0 + kVerdictTol;
  return res;
}

}  // namespace ctk::ineq
