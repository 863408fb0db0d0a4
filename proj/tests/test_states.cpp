#include "ebound/states.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

using namespace ebound;

namespace {

double rel(double actual, double expected) {
  return std::abs(actual - expected) / std::abs(expected);
}

std::vector<double> random_probs(std::mt19937& rng, int rank) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> v(rank);
  double total = 0;
  for (auto& x : v) {
    x = u(rng);
    total += x;
  }
  double partial = 0;
  for (int i = 0; i + 1 < rank; ++i) {
    v[i] /= total;
    partial += v[i];
  }
  v[rank - 1] = 1 - partial;
  return v;
}

}  // namespace

TEST_CASE("schmidt state construction and parsing") {
  const SchmidtState s({0.43, 0.57}, "pair");
  CHECK(s.rank() == 2);
  CHECK(s.label() == "pair");
  CHECK(s.probs()[0] == 0.43);

  CHECK(SchmidtState::parse("0.43,0.57").probs() ==
        std::vector<double>{0.43, 0.57});
  CHECK(SchmidtState::parse("[0.3, 0.3, 0.4]").rank() == 3);
  CHECK(SchmidtState::parse(" 0.5 , 0.5 ").rank() == 2);

  CHECK_THROWS_AS(SchmidtState({0.3, 0.6}, ""), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtState({1.0}, ""), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtState({-0.2, 1.2}, ""), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtState({0.5, std::nan("")}, ""),
                  std::invalid_argument);
  CHECK_THROWS_AS(SchmidtState::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(SchmidtState::parse("0.3,oops"), std::invalid_argument);

  const SchmidtState unsorted({0.4, 0.1, 0.5}, "");
  CHECK(unsorted.ascending() == std::vector<double>{0.1, 0.4, 0.5});
  CHECK(unsorted.ascending_ordering() ==
        std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("two term state") {
  const TwoTermState t(0.3);
  CHECK(t.p() == 0.3);
  CHECK(t.q() == 0.7);
  CHECK_FALSE(t.degenerate());
  CHECK(TwoTermState(0.5).degenerate());

  // from_state keeps the smaller probability regardless of order.
  CHECK(TwoTermState::from_state(SchmidtState({0.86, 0.14}, "")).p() == 0.14);
  CHECK_THROWS_AS(TwoTermState::from_state(SchmidtState({0.3, 0.3, 0.4}, "")),
                  std::invalid_argument);
  CHECK_THROWS_AS(TwoTermState(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TwoTermState(0.6), std::invalid_argument);

  const SchmidtState back = t.as_state();
  CHECK(back.probs()[0] == 0.3);
  CHECK(back.rank() == 2);
}

TEST_CASE("entropy oracle values") {
  CHECK(rel(entropy(SchmidtState({0.43, 0.57}, "")),
            0.98581503717891982713) <= 1e-14);
  CHECK(rel(entropy(SchmidtState({0.3, 0.7}, "")),
            0.88129089923069261822) <= 1e-14);
  CHECK(rel(entropy(SchmidtState({0.14, 0.86}, "")),
            0.58423881164285589326) <= 1e-14);
  CHECK(rel(entropy(SchmidtState({0.1, 0.1, 0.8}, "")),
            0.92192809488736234787) <= 1e-14);
  CHECK(rel(entropy(SchmidtState({0.3, 0.3, 0.4}, "")),
            1.570950594454668639) <= 1e-14);
  CHECK(entropy(SchmidtState({0.5, 0.5}, "")) == 1.0);
  CHECK(std::abs(entropy(TwoTermState(0.3)) -
                 entropy(SchmidtState({0.3, 0.7}, ""))) <= 1e-15);
}

TEST_CASE("surprisal stddev oracle values and two-path identity") {
  CHECK(rel(surprisal_stddev(SchmidtState({0.43, 0.57}, "")),
            0.20131030602098735919) <= 1e-13);
  CHECK(rel(surprisal_stddev(SchmidtState({0.3, 0.7}, "")),
            0.5601705799714624842) <= 1e-13);
  CHECK(rel(surprisal_stddev(SchmidtState({0.14, 0.86}, "")),
            0.90872774848534810594) <= 1e-13);
  // Exactly 1.2 in this specially balanced case.
  CHECK(rel(surprisal_stddev(SchmidtState({0.1, 0.1, 0.8}, "")), 1.2) <=
        1e-13);
  CHECK(surprisal_stddev(SchmidtState({0.5, 0.5}, "")) == 0.0);

  for (int i = 1; i <= 49; ++i) {
    const double p = i / 100.0;
    const TwoTermState t(p);
    const double closed = surprisal_stddev(t);
    const double general = surprisal_stddev(t.as_state());
    CHECK(std::abs(closed - general) <= 1e-12 * std::max(1.0, closed));
    CHECK(std::abs(closed - std::sqrt(p * (1 - p)) *
                                std::log2((1 - p) / p)) <= 1e-14);
  }
}

TEST_CASE("entropy and alpha are permutation invariant") {
  std::mt19937 rng(20260822);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> probs = random_probs(rng, 3 + trial % 4);
    const SchmidtState a(probs, "");
    std::shuffle(probs.begin(), probs.end(), rng);
    const SchmidtState b(probs, "");
    CHECK(std::abs(entropy(a) - entropy(b)) <= 1e-12);
    CHECK(std::abs(surprisal_stddev(a) - surprisal_stddev(b)) <= 1e-12);
  }
}

TEST_CASE("entropy is concave with peak at the even state") {
  for (int i = 2; i <= 96; ++i) {
    const double a = entropy(TwoTermState(i / 200.0));
    const double b = entropy(TwoTermState((i + 1) / 200.0));
    const double c = entropy(TwoTermState((i + 2) / 200.0));
    CHECK(a - 2 * b + c < 0);
    CHECK(b <= 1.0);
  }
}

TEST_CASE("omega vector oracle values") {
  const SchmidtState s({0.3, 0.3, 0.4}, "");
  const std::vector<double> asc = omega_vector(s, s.ascending_ordering());
  REQUIRE(asc.size() == 2);
  CHECK(rel(asc[0], 0.108682328953742) <= 1e-12);
  CHECK(rel(asc[1], 0.171841850452744) <= 1e-12);

  const std::vector<std::size_t> desc{2, 0, 1};
  const std::vector<double> down = omega_vector(s, desc);
  CHECK(rel(down[0], -0.203326019470782) <= 1e-12);
  CHECK(std::abs(down[1]) <= 1e-15);

  // Natural-log reading scales every entry by ln 2.
  const std::vector<double> nat =
      omega_vector(s, s.ascending_ordering(), OmegaLogBase::natural);
  for (std::size_t i = 0; i < nat.size(); ++i) {
    CHECK(std::abs(nat[i] - asc[i] * std::numbers::ln2) <= 1e-14);
  }

  CHECK_THROWS_AS(omega_vector(s, std::vector<std::size_t>{0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(omega_vector(s, std::vector<std::size_t>{0, 0, 1}),
                  std::invalid_argument);
}

TEST_CASE("rank-2 omega reduces to alpha") {
  for (int i = 5; i <= 45; i += 5) {
    const double p = i / 100.0;
    const SchmidtState s({p, 1 - p}, "");
    const double alpha = surprisal_stddev(s);
    for (const std::vector<std::size_t>& ord :
         {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
      const std::vector<double> om = omega_vector(s, ord);
      REQUIRE(om.size() == 1);
      CHECK(std::abs(std::abs(om[0]) - alpha) <= 1e-12);
    }
  }
}

TEST_CASE("omega_t sorted prescription") {
  const SchmidtState s({0.3, 0.3, 0.4}, "");
  const OmegaT cap = omega_t(s, OmegaStrategy::sorted_prescription);
  CHECK(rel(cap.value, 0.17184185045274437696) <= 1e-12);
  CHECK(cap.strategy == OmegaStrategy::sorted_prescription);
  CHECK(cap.log_base == OmegaLogBase::base2);
  CHECK(cap.ordering == s.ascending_ordering());
  // The cap dominates every entry it is meant to cap.
  CHECK(cap.value >= cap.max_abs_omega - 1e-15);

  const OmegaT nat =
      omega_t(s, OmegaStrategy::sorted_prescription, OmegaLogBase::natural);
  CHECK(rel(nat.value, 0.11911169414352352628) <= 1e-12);

  const SchmidtState four({0.1, 0.2, 0.3, 0.4}, "");
  CHECK(rel(omega_t(four, OmegaStrategy::sorted_prescription).value,
            1.52727595458209) <= 1e-12);
}

TEST_CASE("omega_t minimax ordering") {
  const SchmidtState four({0.1, 0.2, 0.3, 0.4}, "");
  const OmegaT best = omega_t(four, OmegaStrategy::minimax_ordering);
  CHECK(rel(best.value, 0.428261642106481) <= 1e-12);
  CHECK(best.ordering == std::vector<std::size_t>{3, 0, 1, 2});

  // Brute-force oracle over every ordering.
  std::vector<std::size_t> idx(four.rank());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  double brute = 1e300;
  do {
    double max_abs = 0;
    for (double w : omega_vector(four, idx)) {
      max_abs = std::max(max_abs, std::abs(w));
    }
    brute = std::min(brute, max_abs);
  } while (std::next_permutation(idx.begin(), idx.end()));
  CHECK(std::abs(best.value - brute) <= 1e-15);

  std::mt19937 rng(20260822);
  for (int trial = 0; trial < 20; ++trial) {
    const SchmidtState s(random_probs(rng, 3 + trial % 4), "");
    const double mini = omega_t(s, OmegaStrategy::minimax_ordering).value;
    const double sorted =
        omega_t(s, OmegaStrategy::sorted_prescription).value;
    CHECK(mini <= sorted + 1e-12);
  }

  std::vector<double> nine(9, 1.0 / 9);
  nine[8] = 1 - std::accumulate(nine.begin(), nine.end() - 1, 0.0);
  nine[0] += 0.01;
  nine[8] -= 0.01;
  CHECK_THROWS_AS(omega_t(SchmidtState(nine, ""),
                          OmegaStrategy::minimax_ordering),
                  std::invalid_argument);
}

TEST_CASE("omega_t explicit value") {
  const SchmidtState s({0.3, 0.3, 0.4}, "");
  const OmegaT cap = omega_t(s, OmegaStrategy::explicit_value,
                             OmegaLogBase::base2, 0.5);
  CHECK(cap.value == 0.5);
  CHECK(cap.strategy == OmegaStrategy::explicit_value);
  // Must dominate the ascending-ordering entries; 0.1 does not.
  CHECK_THROWS_AS(omega_t(s, OmegaStrategy::explicit_value,
                          OmegaLogBase::base2, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(omega_t(s, OmegaStrategy::explicit_value),
                  std::invalid_argument);
}
