#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ctk/errors.hpp"

namespace ctk {

/// One dichotomous measurement outcome, -1 or +1.
struct Outcome {
  int value;

  explicit Outcome(int v) : value(v) {
    if (v != -1 && v != +1) throw Error("outcome must be -1 or +1");
  }
};

/// Probability vector over the 2^arity outcome tuples of `arity` binary
/// (+-1) variables.
///
/// Atoms are indexed lexicographically with -1 ordered before +1 and
/// variable 0 in the most significant position, so for arity 2 the order is
/// (-1,-1), (-1,+1), (+1,-1), (+1,+1). The ordering is part of the file
/// format contract: dumps are bit-stable across implementations.
///
/// Construction clips negative entries within -1e-12 to zero, requires the
/// entries to sum to 1 within 1e-9, and renormalizes exactly. Instances are
/// immutable afterwards and safe to share across threads.
class JointDistribution {
 public:
  JointDistribution(int arity, std::vector<double> probs);

  static JointDistribution uniform(int arity);
  /// Point mass on one outcome tuple (outcomes.size() == arity).
  static JointDistribution point_mass(const std::vector<int>& outcomes);

  int arity() const { return arity_; }
  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t atom) const { return probs_[atom]; }
  const std::vector<double>& probs() const { return probs_; }

  /// Sign (+-1) of variable `var` in atom `atom`.
  int sign(std::size_t atom, int var) const {
    return ((atom >> (arity_ - 1 - var)) & 1u) ? +1 : -1;
  }

 private:
  int arity_;
  std::vector<double> probs_;
};

/// Per-context means and correlation of two +-1 observables, the measurable
/// quantities a context exposes. `n_trials` is 0 for analytic systems.
///
/// The constructor enforces that a valid two-variable joint exists: every
/// cell (1 + a*mean_a + b*mean_b + a*b*corr)/4 must be >= -1e-9.
struct PairwiseStats {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double corr = 0.0;
  long n_trials = 0;

  PairwiseStats() = default;
  PairwiseStats(double ma, double mb, double c, long n = 0);

  /// Smallest of the four implied cell probabilities.
  double min_cell() const;
};

/// Identifier of a measurement context: the pair of settings (i, j), 1-based.
struct ContextId {
  int i = 1;
  int j = 1;

  friend bool operator==(const ContextId&, const ContextId&) = default;
};

/// The n=4 cyclic (CHSH / Bohm-Bell) system: exactly the four contexts
/// C11, C12, C21, C22, each carrying PairwiseStats.
class CyclicSystem {
 public:
  CyclicSystem(const PairwiseStats& c11, const PairwiseStats& c12,
               const PairwiseStats& c21, const PairwiseStats& c22)
      : contexts_{c11, c12, c21, c22} {}

  int n() const { return 4; }

  const PairwiseStats& at(int i, int j) const {
    if (i < 1 || i > 2 || j < 1 || j > 2) throw Error("context indices must be 1 or 2");
    return contexts_[static_cast<std::size_t>((i - 1) * 2 + (j - 1))];
  }

  /// Correlations in context order C11, C12, C21, C22.
  std::array<double, 4> correlations() const {
    return {contexts_[0].corr, contexts_[1].corr, contexts_[2].corr, contexts_[3].corr};
  }

 private:
  std::array<PairwiseStats, 4> contexts_;
};

/// Two-variable joint from its moments: p(a,b) = (1 + a*mean_a + b*mean_b +
/// a*b*corr)/4. Throws InvalidStats when any cell < -1e-9; cells within
/// tolerance are clipped to zero.
JointDistribution cells_from_stats(const PairwiseStats& stats);

/// Inverse of cells_from_stats: moments of an arity-2 distribution.
PairwiseStats moments_from_cells(const JointDistribution& dist);

/// Sums out all variables not in `keep` (indices into 0..arity-1; order of
/// the kept variables is preserved). Throws EmptyKeepSet.
JointDistribution marginal(const JointDistribution& dist, const std::vector<int>& keep);

}  // namespace ctk
