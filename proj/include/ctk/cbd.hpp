#pragma once

#include <vector>

#include "ctk/linprog.hpp"
#include "ctk/probability.hpp"

namespace ctk::cbd {

/// Coupling variable order (indices 0..7, index 0 most significant in the
/// atom encoding): A11, B11, A12, B21, A21, B12, A22, B22. Context (i, j)
/// pairs variables (A_ij, B_ji); same-observable copies are
/// a1: (0, 2), a2: (4, 6), b1: (1, 5), b2: (3, 7).
inline constexpr int kCouplingArity = 8;
inline constexpr int kCouplingAtoms = 256;

/// A joint distribution over the octuple of context-indexed observable
/// copies whose pairwise context marginals match the given system within
/// 1e-8.
class OctupleCoupling {
 public:
  OctupleCoupling(JointDistribution dist, const CyclicSystem& system);

  const JointDistribution& dist() const { return dist_; }

 private:
  JointDistribution dist_;
};

/// Equality block for all couplings of `system`: one normalization row plus
/// three moment rows per context (13 x 256). The objective is left zero.
lp::LinearProgram coupling_constraints(const CyclicSystem& system);

/// Coefficient vector of the identity-mismatch functional on atoms: the
/// number of same-observable copy pairs that disagree in the atom.
std::vector<double> mismatch_objective();

/// Sum over observables of the probability that their two context copies
/// disagree under the coupling.
double delta_of_coupling(const OctupleCoupling& coupling);

struct CbdReport {
  double delta_min = 0.0;
  double delta0 = 0.0;
  double genuine = 0.0;         // delta_min - delta0
  bool contextual = false;      // genuine > 1e-9
  OctupleCoupling argmin_coupling;
};

/// Minimizes the mismatch functional over all couplings via the LP kernel.
/// The argmin coupling is generally not unique; the solver's deterministic
/// pivoting fixes which vertex is reported.
CbdReport delta_min(const CyclicSystem& system);

}  // namespace ctk::cbd
