#include "ebound/bounds.hpp"

#include "ebound/special_functions.hpp"
#include "ebound/typical_sets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ebound {

namespace {

constexpr double kBoundaryGuard = 1e-9;

// Both claim pairs share the subtracted term; computing it once makes the
// halving relation between the pair hold to rounding.
struct ClaimPair {
  double alpha2 = 0;
  double subtracted = 0;
};

ClaimPair two_term_pair(const TwoTermState& psi1, const SchmidtState& psi2,
                        const ErrorBudget& budget) {
  ClaimPair pair;
  pair.alpha2 = surprisal_stddev(psi2);
  pair.subtracted = gamma_ratio_budget(budget) *
                    surprisal_stddev(psi1.as_state()) *
                    std::sqrt(entropy(psi2) / entropy(psi1));
  return pair;
}

ClaimPair general_pair(const SchmidtState& psi1, const SchmidtState& psi2,
                       const ErrorBudget& budget, const OmegaT& cap) {
  const int b = static_cast<int>(psi1.rank());
  ClaimPair pair;
  pair.alpha2 = surprisal_stddev(psi2);
  pair.subtracted = gamma_from_error_general(budget.eps_lp1_max(), b) *
                    cap.value * std::sqrt(entropy(psi2) / entropy(psi1));
  return pair;
}

ConversionBound assemble(int claim, BoundKind kind, const ClaimPair& pair,
                         const std::vector<double>& psi1,
                         const std::vector<double>& psi2,
                         const ErrorBudget& budget) {
  ConversionBound b;
  b.claim = claim;
  b.kind = kind;
  const int multiplier = kind == BoundKind::classical_communication ? 2 : 1;
  b.coefficient = pair.alpha2 - multiplier * pair.subtracted;
  b.vacuous = !(b.coefficient > 0);
  b.psi1 = psi1;
  b.psi2 = psi2;
  b.eps2 = budget.eps2();
  b.total_error = budget.total();
  return b;
}

}  // namespace

ErrorBudget::ErrorBudget(double eps2, double total)
    : eps2_(eps2), total_(total) {
  if (!(total > 0) || !std::isfinite(total)) {
    throw std::domain_error("total error allowance must be positive");
  }
  if (!(eps2 >= 0)) {
    throw std::domain_error("eps2 must be nonnegative");
  }
  if (eps2 > total - kBoundaryGuard) {
    throw std::domain_error(
        "eps2 exhausts the error budget; it must stay below the total "
        "allowance by at least 1e-9");
  }
}

SingletBounds harrow_lo_singlet_bounds(const SchmidtState& psi, long n,
                                       double success_exponent) {
  if (n < 1) {
    throw std::domain_error("block size must be at least 1");
  }
  if (!(success_exponent >= 0)) {
    throw std::domain_error("success exponent must be nonnegative");
  }
  const double spread = surprisal_stddev(psi) * std::sqrt(double(n));
  SingletBounds b;
  b.entanglement_min = double(n) * entropy(psi) + spread;
  const double raw_cc = spread - success_exponent;
  b.cc_vacuous = !(raw_cc > 0);
  b.cc_min = b.cc_vacuous ? 0 : raw_cc;
  return b;
}

double gamma_ratio_budget(const ErrorBudget& budget) {
  const double eps1 = budget.eps1();
  return std::sqrt(lambert_w0(8 / (std::numbers::pi * eps1 * eps1)));
}

double lp_stage_cc_budget(const TwoTermState& psi1, const SchmidtState& psi2,
                          const ErrorBudget& budget, long n) {
  if (n < 1) {
    throw std::domain_error("block size must be at least 1");
  }
  return 2 * gamma_ratio_budget(budget) * surprisal_stddev(psi1.as_state()) *
         std::sqrt(double(n) * entropy(psi2) / entropy(psi1));
}

ConversionBound cc_lower_bound_two_term(const TwoTermState& psi1,
                                        const SchmidtState& psi2,
                                        const ErrorBudget& budget) {
  return assemble(3, BoundKind::classical_communication,
                  two_term_pair(psi1, psi2, budget),
                  psi1.as_state().probs(), psi2.probs(), budget);
}

ConversionBound ineff_lower_bound_two_term(const TwoTermState& psi1,
                                           const SchmidtState& psi2,
                                           const ErrorBudget& budget) {
  return assemble(4, BoundKind::inefficiency,
                  two_term_pair(psi1, psi2, budget),
                  psi1.as_state().probs(), psi2.probs(), budget);
}

ConversionBound cc_lower_bound_general(const SchmidtState& psi1,
                                       const SchmidtState& psi2,
                                       const ErrorBudget& budget,
                                       OmegaStrategy strategy,
                                       OmegaLogBase base) {
  const OmegaT cap = omega_t(psi1, strategy, base);
  ConversionBound b =
      assemble(5, BoundKind::classical_communication,
               general_pair(psi1, psi2, budget, cap), psi1.probs(),
               psi2.probs(), budget);
  b.omega_t = cap;
  return b;
}

ConversionBound ineff_lower_bound_general(const SchmidtState& psi1,
                                          const SchmidtState& psi2,
                                          const ErrorBudget& budget,
                                          OmegaStrategy strategy,
                                          OmegaLogBase base) {
  const OmegaT cap = omega_t(psi1, strategy, base);
  ConversionBound b = assemble(6, BoundKind::inefficiency,
                               general_pair(psi1, psi2, budget, cap),
                               psi1.probs(), psi2.probs(), budget);
  b.omega_t = cap;
  return b;
}

bool nonzero_cc_predicate(const TwoTermState& psi1, const SchmidtState& psi2,
                          const ErrorBudget& budget) {
  return cc_lower_bound_two_term(psi1, psi2, budget).coefficient > 0;
}

bool nonzero_ineff_predicate(const TwoTermState& psi1,
                             const SchmidtState& psi2,
                             const ErrorBudget& budget) {
  return ineff_lower_bound_two_term(psi1, psi2, budget).coefficient > 0;
}

}  // namespace ebound
