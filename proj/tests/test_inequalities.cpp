#include <doctest.h>

#include <cmath>

#include "ctk/estimation.hpp"
#include "ctk/inequalities.hpp"
#include "ctk/quantum.hpp"
#include "ctk/rng.hpp"
#include "ctk/simulator.hpp"
#include "support/generators.hpp"

using namespace ctk;

namespace {

const double kSqrt2 = std::sqrt(2.0);

CyclicSystem system_from_correlations(double c11, double c12, double c21, double c22) {
  return CyclicSystem(PairwiseStats(0, 0, c11), PairwiseStats(0, 0, c12),
                      PairwiseStats(0, 0, c21), PairwiseStats(0, 0, c22));
}

CyclicSystem deterministic_system() {
  PairwiseStats all_plus(1.0, 1.0, 1.0);
  return CyclicSystem(all_plus, all_plus, all_plus, all_plus);
}

}  // namespace

TEST_SUITE("inequalities") {

TEST_CASE("chsh examples") {
  ineq::ChshReport pr = ineq::chsh(sim::pr_box_system());
  CHECK(pr.s_max == doctest::Approx(4.0));
  CHECK_FALSE(pr.satisfied);

  ineq::ChshReport classical = ineq::chsh(system_from_correlations(1, 1, 1, 1));
  CHECK(classical.s_max == doctest::Approx(2.0));
  CHECK(classical.satisfied);

  ineq::ChshReport quantum =
      ineq::chsh(system_from_correlations(kSqrt2 / 2, kSqrt2 / 2, kSqrt2 / 2, -kSqrt2 / 2));
  CHECK(quantum.s_max == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
  CHECK_FALSE(quantum.satisfied);
}

TEST_CASE("chsh s_max is invariant under transposing the context grid") {
  rng::SplitMix64 g(606);
  for (int k = 0; k < 200; ++k) {
    CyclicSystem sys = testgen::random_general_system(g);
    auto flip = [](const PairwiseStats& s) {
      return PairwiseStats(s.mean_b, s.mean_a, s.corr, s.n_trials);
    };
    CyclicSystem transposed(flip(sys.at(1, 1)), flip(sys.at(2, 1)), flip(sys.at(1, 2)),
                            flip(sys.at(2, 2)));
    ineq::ChshReport rep = ineq::chsh(sys);
    CHECK(rep.s_max <= 4.0 + 1e-12);
    CHECK(rep.s_max == doctest::Approx(ineq::chsh(transposed).s_max).epsilon(1e-12));
  }
}

TEST_CASE("bdk examples") {
  CyclicSystem pr = sim::pr_box_system();
  ineq::BdkReport pr_rep = ineq::bdk(pr, est::signaling_deltas(pr));
  CHECK(pr_rep.lhs == doctest::Approx(4.0));
  CHECK(pr_rep.delta0 == 0.0);
  CHECK(pr_rep.contextual);

  CyclicSystem det = deterministic_system();
  ineq::BdkReport det_rep = ineq::bdk(det, est::signaling_deltas(det));
  CHECK(det_rep.lhs == doctest::Approx(2.0));
  CHECK_FALSE(det_rep.contextual);

  quantum::Scenario clean;
  CyclicSystem tsirelson = clean.system();
  ineq::BdkReport q_rep = ineq::bdk(tsirelson, est::signaling_deltas(tsirelson));
  CHECK(q_rep.lhs == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
  CHECK(q_rep.delta0 <= 1e-9);
  CHECK(q_rep.contextual);
}

TEST_CASE("bdk with delta0 = 0 is exactly the chsh permutation test") {
  rng::SplitMix64 g(9090);
  for (int k = 0; k < 300; ++k) {
    CyclicSystem sys = testgen::random_signaling_free_system(g);
    est::SignalingReport deltas = est::signaling_deltas(sys);
    REQUIRE(deltas.delta0 <= 1e-12);
    ineq::ChshReport ch = ineq::chsh(sys);
    ineq::BdkReport bd = ineq::bdk(sys, deltas);
    CHECK(bd.lhs == doctest::Approx(ch.s_max).epsilon(1e-12));
    CHECK(bd.contextual == !ch.satisfied);
  }
}

TEST_CASE("jpd oracle on canonical systems") {
  ineq::FineResult det = ineq::jpd_feasible(deterministic_system());
  REQUIRE(det.feasible);
  REQUIRE(det.witness.has_value());
  // The only consistent joint is the all-+1 point mass.
  CHECK(det.witness->prob(15) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_FALSE(ineq::jpd_feasible(sim::pr_box_system()).feasible);

  quantum::Scenario clean;
  CHECK_FALSE(ineq::jpd_feasible(clean.system()).feasible);
}

TEST_CASE("jpd oracle refuses marginally inconsistent input") {
  CyclicSystem signaling(PairwiseStats(0.2, 0.0, 0.0), PairwiseStats(0.0, 0.0, 0.0),
                         PairwiseStats(0.0, 0.0, 0.0), PairwiseStats(0.0, 0.0, 0.0));
  CHECK_THROWS_AS(ineq::jpd_feasible(signaling), SignalingInput);
}

TEST_CASE("fine equivalence over random no-signaling systems") {
  rng::SplitMix64 g(123123);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int k = 0; k < 1000; ++k) {
    CyclicSystem sys = (k % 3 == 0)   ? testgen::random_system_from_jpd(g)
                       : (k % 3 == 1) ? testgen::random_signaling_free_system(g)
                                      : testgen::random_no_signaling_boundary_system(g);
    bool chsh_ok = true;
    for (double v : ineq::chsh(sys).values) chsh_ok = chsh_ok && v <= 2.0 + 1e-7;
    ineq::FineResult fine = ineq::jpd_feasible(sys);
    CHECK(fine.feasible == chsh_ok);
    (fine.feasible ? feasible_seen : infeasible_seen)++;
  }
  CHECK(feasible_seen > 0);
  CHECK(infeasible_seen > 0);
}

TEST_CASE("witnesses reproduce every context within 1e-7") {
  rng::SplitMix64 g(456456);
  int checked = 0;
  for (int k = 0; k < 200 && checked < 60; ++k) {
    CyclicSystem sys = (k % 3 == 0)   ? testgen::random_system_from_jpd(g)
                       : (k % 3 == 1) ? testgen::random_signaling_free_system(g)
                                      : testgen::random_no_signaling_boundary_system(g);
    ineq::FineResult fine = ineq::jpd_feasible(sys);
    if (!fine.feasible) continue;
    ++checked;
    // Variables (a1, a2, b1, b2): context (i, j) marginalizes onto {i-1, 2+j-1}.
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        PairwiseStats got = moments_from_cells(marginal(*fine.witness, {i - 1, 2 + j - 1}));
        const PairwiseStats& want = sys.at(i, j);
        CHECK(std::abs(got.mean_a - want.mean_a) <= 1e-7);
        CHECK(std::abs(got.mean_b - want.mean_b) <= 1e-7);
        CHECK(std::abs(got.corr - want.corr) <= 1e-7);
      }
  }
  CHECK(checked >= 30);
}

TEST_CASE("tsirelson_check") {
  CHECK(ineq::tsirelson_check(2.0 * kSqrt2));
  CHECK(ineq::tsirelson_check(2.0));
  CHECK_FALSE(ineq::tsirelson_check(4.0));
  CHECK_THROWS_AS(ineq::tsirelson_check(-0.5), Error);
}

TEST_CASE("ncycle evaluation") {
  ineq::NcycleResult pr = ineq::ncycle_evaluate({1, 1, 1, -1}, {1, 1, 1, -1});
  CHECK(pr.value == doctest::Approx(4.0));
  CHECK_FALSE(pr.satisfied);

  ineq::NcycleResult mild = ineq::ncycle_evaluate({0.5, 0.5, 0.5, 0.5}, {1, 1, 1, -1});
  CHECK(mild.value == doctest::Approx(1.0));
  CHECK(mild.satisfied);

  // Quantum-optimal correlations in cycle order (x1 x2, x2 x3, x3 x4, x4 x1)
  // = (c11, c21, c22, c12) with x = (a1, b1, a2, b2).
  quantum::Scenario clean;
  CyclicSystem sys = clean.system();
  ineq::NcycleResult quantum_case = ineq::ncycle_evaluate(
      {sys.at(1, 1).corr, sys.at(2, 1).corr, sys.at(2, 2).corr, sys.at(1, 2).corr},
      {1, 1, 1, -1});
  CHECK(quantum_case.value == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
  CHECK_FALSE(quantum_case.satisfied);

  // A five-cycle instance of the same family.
  ineq::NcycleResult five = ineq::ncycle_evaluate({1, 1, 1, 1, -1}, {1, 1, 1, 1, -1});
  CHECK(five.value == doctest::Approx(5.0));
  CHECK_FALSE(five.satisfied);

  CHECK_THROWS_AS(ineq::ncycle_evaluate({1, 1, 1, 1}, {1, 1, 1, 1}), EvenNegativeSigns);
  CHECK_THROWS_AS(ineq::ncycle_evaluate({1, 1}, {1, -1}), Error);
  CHECK_THROWS_AS(ineq::ncycle_evaluate({1, 1, 1}, {1, -1}), DimensionMismatch);
  CHECK_THROWS_AS(ineq::ncycle_evaluate({1, 1, 3}, {1, 1, -1}), Error);
}

}  // TEST_SUITE
