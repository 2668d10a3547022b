#include "ctk/cbd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctk/estimation.hpp"

namespace ctk::cbd {

namespace {

constexpr double kMarginalTol = 1e-8;

int sign_of(int atom, int var) { return ((atom >> (kCouplingArity - 1 - var)) & 1) ? +1 : -1; }

/// Coupling variable indices of context (i, j): the pair (A_ij, B_ji).
struct ContextVars {
  int a;
  int b;
};

ContextVars context_vars(int i, int j) {
  static constexpr ContextVars kTable[2][2] = {{{0, 1}, {2, 3}}, {{4, 5}, {6, 7}}};
  return kTable[i - 1][j - 1];
}

// Same-observable copy pairs: a1, a2, b1, b2.
constexpr int kCopyPairs[4][2] = {{0, 2}, {4, 6}, {1, 5}, {3, 7}};

}  // namespace

OctupleCoupling::OctupleCoupling(JointDistribution dist, const CyclicSystem& system)
    : dist_(std::move(dist)) {
  if (dist_.arity() != kCouplingArity)
    throw DimensionMismatch("coupling must have arity 8");
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      ContextVars vars = context_vars(i, j);
      JointDistribution pair = marginal(dist_, {vars.a, vars.b});
      JointDistribution cells = cells_from_stats(system.at(i, j));
      for (std::size_t atom = 0; atom < 4; ++atom) {
        double diff = std::abs(pair.prob(atom) - cells.prob(atom));
        if (diff > kMarginalTol)
          throw Error("coupling marginal of context (" + std::to_string(i) + "," +
                      std::to_string(j) + ") deviates by " + std::to_string(diff));
      }
    }
  }
}

lp::LinearProgram coupling_constraints(const CyclicSystem& system) {
  lp::LinearProgram prog;
  prog.objective.assign(kCouplingAtoms, 0.0);

  prog.matrix.emplace_back(kCouplingAtoms, 1.0);
  prog.rhs.push_back(1.0);

  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      ContextVars vars = context_vars(i, j);
      const PairwiseStats& stats = system.at(i, j);

      std::vector<double> row_a(kCouplingAtoms), row_b(kCouplingAtoms), row_ab(kCouplingAtoms);
      for (int atom = 0; atom < kCouplingAtoms; ++atom) {
        double sa = sign_of(atom, vars.a);
        double sb = sign_of(atom, vars.b);
        row_a[static_cast<std::size_t>(atom)] = sa;
        row_b[static_cast<std::size_t>(atom)] = sb;
        row_ab[static_cast<std::size_t>(atom)] = sa * sb;
      }
      prog.matrix.push_back(std::move(row_a));
      prog.rhs.push_back(stats.mean_a);
      prog.matrix.push_back(std::move(row_b));
      prog.rhs.push_back(stats.mean_b);
      prog.matrix.push_back(std::move(row_ab));
      prog.rhs.push_back(stats.corr);
    }
  }
  return prog;
}

std::vector<double> mismatch_objective() {
  std::vector<double> c(kCouplingAtoms, 0.0);
  for (int atom = 0; atom < kCouplingAtoms; ++atom)
    for (const auto& pair : kCopyPairs)
      if (sign_of(atom, pair[0]) != sign_of(atom, pair[1]))
        c[static_cast<std::size_t>(atom)] += 1.0;
  return c;
}

double delta_of_coupling(const OctupleCoupling& coupling) {
  std::vector<double> c = mismatch_objective();
  double total = 0.0;
  for (int atom = 0; atom < kCouplingAtoms; ++atom)
    total += c[static_cast<std::size_t>(atom)] * coupling.dist().prob(static_cast<std::size_t>(atom));
  return total;
}

CbdReport delta_min(const CyclicSystem& system) {
  lp::LinearProgram prog = coupling_constraints(system);
  prog.objective = mismatch_objective();
  lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal)
    throw NumericalBreakdown("coupling LP not optimal; couplings always exist");

  double delta0 = est::signaling_deltas(system).delta0;
  double dmin = sol.objective_value;
  if (dmin < delta0 - 1e-9)
    throw NumericalBreakdown("delta_min " + std::to_string(dmin) + " below delta0 " +
                             std::to_string(delta0));

  // Rescale: the solver's residual contract (1e-8) is looser than the
  // distribution normalization gate (1e-9).
  double sum = 0.0;
  for (double& v : sol.x) {
    v = std::max(v, 0.0);
    sum += v;
  }
  for (double& v : sol.x) v /= sum;
  OctupleCoupling argmin(JointDistribution(kCouplingArity, sol.x), system);
  double genuine = dmin - delta0;
  return CbdReport{dmin, delta0, genuine, genuine > 1e-9, std::move(argmin)};
}

}  // namespace ctk::cbd
