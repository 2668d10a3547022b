#pragma once

// Shared randomized-instance generators for the unit and acceptance suites.
// Everything draws from the caller's SplitMix64 stream, so suites are
// reproducible across platforms.

#include <cmath>
#include <vector>

#include "ctk/probability.hpp"
#include "ctk/rng.hpp"

namespace testgen {

inline double uniform(ctk::rng::SplitMix64& g, double lo, double hi) {
  return lo + (hi - lo) * g.next_double();
}

/// Random valid arity-k distribution (normalized exponential weights).
inline ctk::JointDistribution random_joint(int arity, ctk::rng::SplitMix64& g) {
  std::vector<double> w(std::size_t{1} << arity);
  double sum = 0.0;
  for (double& v : w) {
    v = -std::log(1.0 - g.next_double());
    sum += v;
  }
  for (double& v : w) v /= sum;
  return ctk::JointDistribution(arity, std::move(w));
}

/// Correlation drawn uniformly from the interval the means admit.
inline double random_corr_for_means(ctk::rng::SplitMix64& g, double ma, double mb) {
  double lo = -1.0 + std::abs(ma + mb);
  double hi = 1.0 - std::abs(ma - mb);
  return uniform(g, lo, hi);
}

inline ctk::PairwiseStats random_valid_stats(ctk::rng::SplitMix64& g) {
  double ma = uniform(g, -0.95, 0.95);
  double mb = uniform(g, -0.95, 0.95);
  return ctk::PairwiseStats(ma, mb, random_corr_for_means(g, ma, mb), 0);
}

/// Four independent contexts; marginal inconsistency is generic.
inline ctk::CyclicSystem random_general_system(ctk::rng::SplitMix64& g) {
  return ctk::CyclicSystem(random_valid_stats(g), random_valid_stats(g), random_valid_stats(g),
                           random_valid_stats(g));
}

/// Shared single-observable means across contexts, independent correlations:
/// marginally consistent by construction, CHSH unconstrained. The mean
/// envelope is itself randomized; small means leave the correlations room to
/// violate CHSH, large means pin them down.
inline ctk::CyclicSystem random_signaling_free_system(ctk::rng::SplitMix64& g) {
  double spread = uniform(g, 0.05, 0.95);
  double ma[2] = {uniform(g, -spread, spread), uniform(g, -spread, spread)};
  double mb[2] = {uniform(g, -spread, spread), uniform(g, -spread, spread)};
  ctk::PairwiseStats s[2][2] = {
      {{ma[0], mb[0], random_corr_for_means(g, ma[0], mb[0]), 0},
       {ma[0], mb[1], random_corr_for_means(g, ma[0], mb[1]), 0}},
      {{ma[1], mb[0], random_corr_for_means(g, ma[1], mb[0]), 0},
       {ma[1], mb[1], random_corr_for_means(g, ma[1], mb[1]), 0}}};
  return ctk::CyclicSystem(s[0][0], s[0][1], s[1][0], s[1][1]);
}

/// Correlations pushed toward a CHSH boundary sign pattern, with small and
/// independently drawn (hence slightly inconsistent) marginals: exercises
/// the contextual side of the coupling-vs-BDK equivalence.
inline ctk::CyclicSystem random_near_boundary_system(ctk::rng::SplitMix64& g) {
  int minus_at = static_cast<int>(g.next_double() * 4.0);
  ctk::PairwiseStats s[4];
  for (int c = 0; c < 4; ++c) {
    double ma = uniform(g, -0.08, 0.08);
    double mb = uniform(g, -0.08, 0.08);
    double magnitude = uniform(g, 0.6, 1.0);
    double target = (c == minus_at ? -magnitude : magnitude);
    double lo = -1.0 + std::abs(ma + mb);
    double hi = 1.0 - std::abs(ma - mb);
    double corr = std::min(std::max(target, lo), hi);
    s[c] = ctk::PairwiseStats(ma, mb, corr, 0);
  }
  return ctk::CyclicSystem(s[0], s[1], s[2], s[3]);
}

/// Marginally consistent variant of the boundary generator: shared small
/// means, correlations pushed toward a CHSH sign pattern. Gives the JPD
/// oracle a steady supply of infeasible instances.
inline ctk::CyclicSystem random_no_signaling_boundary_system(ctk::rng::SplitMix64& g) {
  double ma[2] = {uniform(g, -0.08, 0.08), uniform(g, -0.08, 0.08)};
  double mb[2] = {uniform(g, -0.08, 0.08), uniform(g, -0.08, 0.08)};
  int minus_at = static_cast<int>(g.next_double() * 4.0);
  ctk::PairwiseStats s[4];
  for (int c = 0; c < 4; ++c) {
    double mean_a = ma[c / 2];
    double mean_b = mb[c % 2];
    double magnitude = uniform(g, 0.6, 1.0);
    double target = (c == minus_at ? -magnitude : magnitude);
    double lo = -1.0 + std::abs(mean_a + mean_b);
    double hi = 1.0 - std::abs(mean_a - mean_b);
    s[c] = ctk::PairwiseStats(mean_a, mean_b, std::min(std::max(target, lo), hi), 0);
  }
  return ctk::CyclicSystem(s[0], s[1], s[2], s[3]);
}

/// Marginal family of one arity-4 distribution over (a1, a2, b1, b2):
/// noncontextual and signaling-free by construction.
inline ctk::CyclicSystem random_system_from_jpd(ctk::rng::SplitMix64& g) {
  ctk::JointDistribution jpd = random_joint(4, g);
  ctk::PairwiseStats s[2][2] = {
      {ctk::moments_from_cells(ctk::marginal(jpd, {0, 2})),
       ctk::moments_from_cells(ctk::marginal(jpd, {0, 3}))},
      {ctk::moments_from_cells(ctk::marginal(jpd, {1, 2})),
       ctk::moments_from_cells(ctk::marginal(jpd, {1, 3}))}};
  return ctk::CyclicSystem(s[0][0], s[0][1], s[1][0], s[1][1]);
}

}  // namespace testgen
