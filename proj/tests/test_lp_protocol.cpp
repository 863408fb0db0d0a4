#include "ebound/lp_protocol.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "ebound/states.hpp"
#include "ebound/typical_sets.hpp"

using namespace ebound;

namespace {

double rel(double actual, double expected) {
  return std::abs(actual - expected) / std::abs(expected);
}

}  // namespace

TEST_CASE("rank-2 decomposition, asymptotic ledger") {
  const TwoTermState s(0.3);
  const LPDecomposition d = decompose(s, 1024, 1.0, LPMode::asymptotic);
  CHECK(d.n == 1024);
  CHECK(d.gamma == 1.0);
  CHECK(d.mode == LPMode::asymptotic);
  CHECK(rel(d.mes_log2, 870.44188081222924) <= 1e-12);
  CHECK(d.sch_delta_log2 == 64.0);
  CHECK(d.entropy_delta == 32.0);
  CHECK(rel(d.eps_lp1, 0.0742336637603218496) <= 1e-12);
  CHECK(d.cc_cost_bits == d.sch_delta_log2);
  CHECK(d.inefficiency_ebits == 32.0);
  CHECK(d.cc_cost_bits == 2 * d.inefficiency_ebits);
  CHECK_FALSE(d.omega_t.has_value());
  CHECK_FALSE(d.general.has_value());
}

TEST_CASE("rank-2 decomposition, exact ledger") {
  const TwoTermState s(0.3);
  const LPDecomposition d = decompose(s, 1024, 1.0, LPMode::exact_finite_n);
  CHECK(rel(d.mes_log2, 870.44188081222933) <= 1e-8);
  CHECK(rel(d.sch_delta_log2, 57.04792752109995) <= 1e-8);
  CHECK(rel(d.entropy_delta, 31.920783856513253) <= 1e-8);
  CHECK(rel(d.inefficiency_ebits, 25.127143664586697) <= 1e-8);
  CHECK(rel(d.eps_lp1, 0.076203921706679376) <= 1e-8);
  CHECK(d.cc_cost_bits == d.sch_delta_log2);
  // The exact window is asymmetric, so the 2:1 ratio is approximate here.
  CHECK(d.cc_cost_bits > d.inefficiency_ebits);
}

TEST_CASE("decomposition rejects hopeless parameters") {
  CHECK_THROWS_AS(decompose(TwoTermState(0.3), 4, 1000.0, LPMode::asymptotic),
                  std::domain_error);
  CHECK_THROWS_AS(decompose(TwoTermState(0.5), 1024, 1.0, LPMode::asymptotic),
                  std::domain_error);
  CHECK_THROWS_AS(
      decompose(TwoTermState(0.3), 200000, 1.0, LPMode::exact_finite_n),
      std::domain_error);
}

TEST_CASE("chopping allowance wiring") {
  const TwoTermState s(0.3);

  const LPDecomposition amode = decompose(s, 1024, 1.0, LPMode::asymptotic);
  REQUIRE(amode.omega.has_value());
  CHECK(*amode.omega == 1.2);  // default gamma + 0.2
  REQUIRE(amode.eps_lp2_bound.has_value());
  CHECK(rel(*amode.eps_lp2_bound, 0.013975646852750313) <= 1e-12);
  CHECK(rel(*amode.eps_lp2_bound,
            epsilon_lp2_bound(s, 1.0, 1.2, 1024).asymptotic) <= 1e-15);

  const LPDecomposition emode =
      decompose(s, 1024, 1.0, LPMode::exact_finite_n);
  REQUIRE(emode.eps_lp2_bound.has_value());
  CHECK(rel(*emode.eps_lp2_bound,
            epsilon_lp2_bound(s, 1.0, 1.2, 1024).finite_n) <= 1e-15);

  const LPDecomposition custom =
      decompose(s, 1024, 1.0, LPMode::asymptotic, 1.5);
  CHECK(*custom.omega == 1.5);
  CHECK(rel(*custom.eps_lp2_bound,
            epsilon_lp2_bound(s, 1.0, 1.5, 1024).asymptotic) <= 1e-15);

  CHECK_THROWS_AS(decompose(s, 1024, 1.0, LPMode::asymptotic, 0.5),
                  std::domain_error);
}

TEST_CASE("classical communication ledger") {
  const LPDecomposition d =
      decompose(TwoTermState(0.3), 1024, 1.0, LPMode::asymptotic);
  const CcLedger ledger = cc_cost(d);
  CHECK(ledger.qubits_teleported == d.sch_delta_log2);
  CHECK(ledger.naive_bits == 2 * d.sch_delta_log2);
  CHECK(ledger.bits == d.sch_delta_log2);
  CHECK(ledger.bits == d.cc_cost_bits);
}

TEST_CASE("trace distance readings") {
  CHECK(trace_distance_from_error(0.04, TraceDistanceMode::linearized) ==
        0.08);
  CHECK(trace_distance_from_error(0.04,
                                  TraceDistanceMode::exact_pure_state) ==
        2 * std::sqrt(0.04));
  CHECK_THROWS_AS(
      trace_distance_from_error(1.0, TraceDistanceMode::linearized),
      std::domain_error);
  CHECK_THROWS_AS(
      trace_distance_from_error(-0.1, TraceDistanceMode::linearized),
      std::domain_error);

  const LPDecomposition d =
      decompose(TwoTermState(0.3), 1024, 1.0, LPMode::asymptotic);
  CHECK(trace_distance_to_ideal(d, TraceDistanceMode::linearized) ==
        trace_distance_from_error(d.eps_lp1, TraceDistanceMode::linearized));
  CHECK(trace_distance_to_ideal(d, TraceDistanceMode::exact_pure_state) ==
        2 * std::sqrt(d.eps_lp1));
}

TEST_CASE("pure-state trace distance against dense eigenvalues") {
  std::mt19937 rng(20260822);
  std::normal_distribution<double> gauss;
  for (int dim : {2, 3, 6, 12}) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd v(dim);
      for (int i = 0; i < dim; ++i) {
        v[i] = gauss(rng);
      }
      v.normalize();

      // Truncate to the leading coordinates and renormalize, the same shape
      // as keeping the typical component of a Schmidt expansion.
      const int keep = std::max(1, dim / 2 + trial % 2);
      if (keep >= dim) {
        continue;  // nothing truncated
      }
      Eigen::VectorXd truncated = Eigen::VectorXd::Zero(dim);
      truncated.head(keep) = v.head(keep);
      const double kept_weight = truncated.squaredNorm();
      REQUIRE(kept_weight > 1e-6);
      // Sum the dropped tail directly; 1 - kept_weight cancels to rounding
      // noise when the tail is tiny.
      const double eps = v.tail(dim - keep).squaredNorm();
      if (eps <= 1e-8) {
        continue;
      }
      truncated /= std::sqrt(kept_weight);

      const Eigen::MatrixXd delta =
          truncated * truncated.transpose() - v * v.transpose();
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(delta);
      const double brute = solver.eigenvalues().cwiseAbs().sum();

      const double closed = trace_distance_from_error(
          eps, TraceDistanceMode::exact_pure_state);
      CHECK(std::abs(brute - closed) <= 1e-10);
    }
  }
}

TEST_CASE("general decomposition reduces to the rank-2 one") {
  const TwoTermState t(0.43);
  const SchmidtState s = t.as_state();
  for (long n : {257L, 300L}) {
    const LPDecomposition two = decompose(t, n, 1.0, LPMode::exact_finite_n);
    const LPDecomposition gen =
        decompose_general(s, n, 1.0, LPMode::exact_finite_n);
    CHECK(rel(gen.mes_log2, two.mes_log2) <= 1e-9);
    CHECK(rel(gen.sch_delta_log2, two.sch_delta_log2) <= 1e-9);
    CHECK(rel(gen.entropy_delta, two.entropy_delta) <= 1e-9);
    CHECK(rel(gen.inefficiency_ebits, two.inefficiency_ebits) <= 1e-9);
    CHECK(std::abs(gen.eps_lp1 - two.eps_lp1) <= 1e-9);
  }
}

TEST_CASE("general decomposition, exact enumeration oracle case") {
  const SchmidtState s({0.3, 0.3, 0.4}, "");
  const LPDecomposition d =
      decompose_general(s, 120, 1.0, LPMode::exact_finite_n);
  CHECK(rel(d.mes_log2, 177.5596201844569) <= 1e-9);
  CHECK(rel(d.eps_lp1, 6.42036230444e-7) <= 1e-6);
  CHECK(rel(d.sch_delta_log2, 190.195380143988 - 177.5596201844569) <= 1e-6);
  CHECK(rel(d.entropy_delta, 188.514075549686 - 177.5596201844569) <= 1e-6);
  REQUIRE(d.general.has_value());
  CHECK(d.general->slab_class_count == 3869);
  CHECK(d.general->degeneracy_window_class_count == 544);
  CHECK(d.general->composition_count == 7381);
  CHECK(rel(d.general->eps_lp1_box, 1.59483294811e-8) <= 1e-6);
  CHECK(rel(d.general->eps_lp1_degeneracy_window, 0.163258637069) <= 1e-6);
  REQUIRE(d.omega_t.has_value());
  CHECK(d.omega_t->strategy == OmegaStrategy::sorted_prescription);
  CHECK_FALSE(d.omega.has_value());
  CHECK_FALSE(d.eps_lp2_bound.has_value());
}

TEST_CASE("general decomposition, asymptotic tail") {
  const SchmidtState s({0.3, 0.3, 0.4}, "");
  const LPDecomposition d = decompose_general(s, 120, 1.0, LPMode::asymptotic);
  CHECK(rel(d.eps_lp1, 1.84513798805e-17) <= 1e-6);
  CHECK(rel(d.sch_delta_log2, 2 * std::sqrt(120.0)) <= 1e-15);
  CHECK(rel(d.entropy_delta, std::sqrt(120.0)) <= 1e-15);
  CHECK(d.cc_cost_bits == 2 * d.inefficiency_ebits);
  CHECK_FALSE(d.general.has_value());

  // A better ordering cap can only shrink the tail.
  const SchmidtState four({0.1, 0.2, 0.3, 0.4}, "");
  const double sorted_eps =
      decompose_general(four, 100, 1.0, LPMode::asymptotic,
                        OmegaStrategy::sorted_prescription)
          .eps_lp1;
  const double minimax_eps =
      decompose_general(four, 100, 1.0, LPMode::asymptotic,
                        OmegaStrategy::minimax_ordering)
          .eps_lp1;
  CHECK(minimax_eps <= sorted_eps);
}

TEST_CASE("general decomposition, display base leaves classification alone") {
  const SchmidtState s({0.3, 0.3, 0.4}, "");
  const LPDecomposition b2 =
      decompose_general(s, 120, 1.0, LPMode::exact_finite_n,
                        OmegaStrategy::sorted_prescription,
                        OmegaLogBase::base2);
  const LPDecomposition nat =
      decompose_general(s, 120, 1.0, LPMode::exact_finite_n,
                        OmegaStrategy::sorted_prescription,
                        OmegaLogBase::natural);
  CHECK(nat.general->slab_class_count == b2.general->slab_class_count);
  CHECK(rel(nat.eps_lp1, b2.eps_lp1) <= 1e-12);
  CHECK(nat.omega_t->log_base == OmegaLogBase::natural);
  CHECK(rel(nat.omega_t->value, 0.11911169414352352628) <= 1e-12);
}

TEST_CASE("general decomposition guard rails") {
  std::vector<double> seven(7, 1.0 / 7);
  seven[6] = 1 - 6.0 / 7;
  CHECK_THROWS_AS(decompose_general(SchmidtState(seven, ""), 50, 1.0,
                                    LPMode::exact_finite_n),
                  std::domain_error);
  CHECK_THROWS_AS(decompose_general(SchmidtState({0.3, 0.3, 0.4}, ""), 301,
                                    1.0, LPMode::exact_finite_n),
                  std::domain_error);

  std::vector<double> six{0.1, 0.1, 0.15, 0.15, 0.2, 0.3};
  // Rank 6 at n = 300 would enumerate ~2e10 compositions.
  CHECK_THROWS_AS(decompose_general(SchmidtState(six, ""), 300, 1.0,
                                    LPMode::exact_finite_n),
                  std::domain_error);
  CHECK_NOTHROW(decompose_general(SchmidtState(six, ""), 20, 2.0,
                                  LPMode::exact_finite_n));

  // Slab so thin no composition lands in it.
  CHECK_THROWS_AS(decompose_general(SchmidtState({0.3, 0.3, 0.4}, ""), 11,
                                    1e-12, LPMode::exact_finite_n),
                  std::domain_error);
}
