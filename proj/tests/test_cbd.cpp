#include <doctest.h>

#include <cmath>

#include "ctk/cbd.hpp"
#include "ctk/estimation.hpp"
#include "ctk/inequalities.hpp"
#include "ctk/quantum.hpp"
#include "ctk/rng.hpp"
#include "ctk/simulator.hpp"
#include "support/generators.hpp"

using namespace ctk;

namespace {

const double kSqrt2 = std::sqrt(2.0);

/// Independent product of the four context joints: a coupling that exists
/// for every valid system (the cross-check oracle for feasibility).
JointDistribution product_coupling(const CyclicSystem& system) {
  JointDistribution c11 = cells_from_stats(system.at(1, 1));
  JointDistribution c12 = cells_from_stats(system.at(1, 2));
  JointDistribution c21 = cells_from_stats(system.at(2, 1));
  JointDistribution c22 = cells_from_stats(system.at(2, 2));
  std::vector<double> probs(cbd::kCouplingAtoms);
  for (int atom = 0; atom < cbd::kCouplingAtoms; ++atom) {
    auto pair_bits = [atom](int hi, int lo) {
      return static_cast<std::size_t>((((atom >> (7 - hi)) & 1) << 1) | ((atom >> (7 - lo)) & 1));
    };
    probs[static_cast<std::size_t>(atom)] = c11.prob(pair_bits(0, 1)) * c12.prob(pair_bits(2, 3)) *
                                            c21.prob(pair_bits(4, 5)) * c22.prob(pair_bits(6, 7));
  }
  return JointDistribution(cbd::kCouplingArity, std::move(probs));
}

int matrix_rank(std::vector<std::vector<double>> m) {
  int rank = 0;
  std::size_t cols = m.empty() ? 0 : m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    for (std::size_t r = row + 1; r < m.size(); ++r)
      if (std::abs(m[r][col]) > std::abs(m[p][col])) p = r;
    if (std::abs(m[p][col]) < 1e-9) continue;
    std::swap(m[p], m[row]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row) continue;
      double f = m[r][col] / m[row][col];
      if (f != 0.0)
        for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_SUITE("cbd") {

TEST_CASE("constraint block shape and rank") {
  lp::LinearProgram prog = cbd::coupling_constraints(sim::pr_box_system());
  CHECK(prog.matrix.size() == 13);
  for (const auto& row : prog.matrix) CHECK(row.size() == 256);
  CHECK(matrix_rank(prog.matrix) == 13);
}

TEST_CASE("couplings always exist") {
  for (const CyclicSystem& sys :
       {sim::pr_box_system(),
        CyclicSystem(PairwiseStats(1, 1, 1), PairwiseStats(1, 1, 1), PairwiseStats(1, 1, 1),
                     PairwiseStats(1, 1, 1))}) {
    lp::LinearProgram prog = cbd::coupling_constraints(sys);
    CHECK(lp::feasibility(prog.matrix, prog.rhs).status == lp::Status::Optimal);
    // Independent construction: the product coupling satisfies the block.
    CHECK_NOTHROW(cbd::OctupleCoupling(product_coupling(sys), sys));
  }
}

TEST_CASE("coupling marginal validation rejects mismatches") {
  CyclicSystem pr = sim::pr_box_system();
  // A coupling for the deterministic system does not match the PR box.
  std::vector<int> all_plus(8, +1);
  CHECK_THROWS_AS(cbd::OctupleCoupling(JointDistribution::point_mass(all_plus), pr), Error);
}

TEST_CASE("delta_of_coupling on canonical couplings") {
  // Identity coupling: copies agree almost surely.
  PairwiseStats det(1.0, 1.0, 1.0);
  CyclicSystem det_sys(det, det, det, det);
  cbd::OctupleCoupling identity(JointDistribution::point_mass(std::vector<int>(8, +1)), det_sys);
  CHECK(cbd::delta_of_coupling(identity) == doctest::Approx(0.0));

  // Independent product of uniform contexts: each copy pair disagrees 1/2.
  PairwiseStats flat(0.0, 0.0, 0.0);
  CyclicSystem flat_sys(flat, flat, flat, flat);
  cbd::OctupleCoupling product(product_coupling(flat_sys), flat_sys);
  CHECK(cbd::delta_of_coupling(product) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("delta_min on canonical systems") {
  PairwiseStats det(1.0, 1.0, 1.0);
  cbd::CbdReport det_rep = cbd::delta_min(CyclicSystem(det, det, det, det));
  CHECK(det_rep.delta_min <= 1e-9);
  CHECK(det_rep.genuine <= 1e-9);
  CHECK_FALSE(det_rep.contextual);
  CHECK(cbd::delta_of_coupling(det_rep.argmin_coupling) ==
        doctest::Approx(det_rep.delta_min).epsilon(1e-9));

  cbd::CbdReport pr_rep = cbd::delta_min(sim::pr_box_system());
  CHECK(pr_rep.delta0 == 0.0);
  CHECK(pr_rep.delta_min == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pr_rep.genuine == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pr_rep.contextual);
  // For the PR box the measure equals (s_max - 2) / 2.
  double margin = (ineq::chsh(sim::pr_box_system()).s_max - 2.0) / 2.0;
  CHECK(pr_rep.genuine == doctest::Approx(margin).epsilon(1e-9));

  quantum::Scenario clean;
  CyclicSystem tsirelson = clean.system();
  cbd::CbdReport q_rep = cbd::delta_min(tsirelson);
  CHECK(q_rep.delta0 <= 1e-9);
  CHECK(q_rep.genuine == doctest::Approx((2.0 * kSqrt2 - 2.0) / 2.0).epsilon(1e-7));
  CHECK(q_rep.contextual);
  // Cross-check against the BDK margin.
  double bdk_margin = (ineq::bdk(tsirelson, est::signaling_deltas(tsirelson)).lhs - 2.0) / 2.0;
  CHECK(q_rep.genuine == doctest::Approx(bdk_margin).epsilon(1e-7));
}

TEST_CASE("argmin of a noncontextual no-signaling system has zero mismatch") {
  rng::SplitMix64 g(321321);
  for (int k = 0; k < 25; ++k) {
    CyclicSystem sys = testgen::random_system_from_jpd(g);
    cbd::CbdReport rep = cbd::delta_min(sys);
    CHECK(rep.delta_min <= 1e-7);
    CHECK(std::abs(rep.genuine) <= 1e-7);
    CHECK(cbd::delta_of_coupling(rep.argmin_coupling) <= 1e-7);
  }
}

TEST_CASE("the coupling measure equals the BDK verdict on random systems") {
  rng::SplitMix64 g(654654);
  int contextual_seen = 0, noncontextual_seen = 0;
  for (int k = 0; k < 200; ++k) {
    CyclicSystem sys = (k % 4 == 0)   ? testgen::random_system_from_jpd(g)
                       : (k % 4 == 1) ? testgen::random_signaling_free_system(g)
                       : (k % 4 == 2) ? testgen::random_general_system(g)
                                      : testgen::random_near_boundary_system(g);
    cbd::CbdReport rep = cbd::delta_min(sys);
    est::SignalingReport deltas = est::signaling_deltas(sys);
    ineq::BdkReport bdk_rep = ineq::bdk(sys, deltas);

    bool coupling_noncontextual = std::abs(rep.delta_min - rep.delta0) <= 1e-7;
    bool bdk_satisfied = bdk_rep.lhs - 2.0 * bdk_rep.delta0 <= 2.0 + 1e-7;
    CHECK(coupling_noncontextual == bdk_satisfied);
    (coupling_noncontextual ? noncontextual_seen : contextual_seen)++;

    CHECK(rep.delta_min >= rep.delta0 - 1e-9);
  }
  CHECK(contextual_seen > 0);
  CHECK(noncontextual_seen > 0);
}

TEST_CASE("genuine contextuality equals the closed-form margin") {
  // For four-context binary systems the LP optimum has a closed form:
  // delta_min - delta0 = max(0, (s_max - 2 - 2 delta0) / 2). Pure moment
  // arithmetic on one side, a 256-variable simplex on the other.
  rng::SplitMix64 g(20250807);
  for (int k = 0; k < 120; ++k) {
    CyclicSystem sys = (k % 4 == 0)   ? testgen::random_system_from_jpd(g)
                       : (k % 4 == 1) ? testgen::random_signaling_free_system(g)
                       : (k % 4 == 2) ? testgen::random_general_system(g)
                                      : testgen::random_near_boundary_system(g);
    cbd::CbdReport rep = cbd::delta_min(sys);
    double margin = std::max(0.0, (ineq::chsh(sys).s_max - 2.0 - 2.0 * rep.delta0) / 2.0);
    CHECK(rep.genuine == doctest::Approx(margin).epsilon(1e-9));
  }
}

TEST_CASE("delta_min is invariant under relabeling an observable") {
  rng::SplitMix64 g(111222);
  for (int k = 0; k < 20; ++k) {
    CyclicSystem sys = testgen::random_general_system(g);
    // Flip a1: negate its mean and the correlations of contexts C11, C12.
    auto flip_a = [](const PairwiseStats& s) {
      return PairwiseStats(-s.mean_a, s.mean_b, -s.corr, s.n_trials);
    };
    CyclicSystem flipped(flip_a(sys.at(1, 1)), flip_a(sys.at(1, 2)), sys.at(2, 1), sys.at(2, 2));
    CHECK(cbd::delta_min(sys).delta_min ==
          doctest::Approx(cbd::delta_min(flipped).delta_min).epsilon(1e-9));
  }
}

TEST_CASE("mismatch objective counts disagreeing copy pairs") {
  std::vector<double> c = cbd::mismatch_objective();
  REQUIRE(c.size() == 256);
  CHECK(c[0] == 0.0);    // all -1: every pair agrees
  CHECK(c[255] == 0.0);  // all +1
  double max_coeff = 0.0;
  for (double v : c) max_coeff = std::max(max_coeff, v);
  CHECK(max_coeff == 4.0);
}

}  // TEST_SUITE
