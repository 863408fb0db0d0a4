#pragma once

#include <gmpxx.h>

#include "ebound/states.hpp"

#include <span>
#include <vector>

namespace ebound {

/// Integer type-class window for a rank-2 state at block size n:
///   k_lo = ceil(n p - h), k_hi = floor(n p + h), h = gamma sqrt(n) / log2(q/p),
/// clamped to [0, n]. Construction rejects degenerate states (the first-order
/// inversion behind the half-width formula breaks down at p = q) and windows
/// that come out empty.
struct TypicalWindow {
  long n = 0;
  double gamma = 0;
  long k_lo = 0;
  long k_hi = 0;
};
TypicalWindow typical_window(const TwoTermState& s, double gamma, long n);

/// The window as defined directly on degeneracies: the contiguous run of k
/// around n*p whose exact C(n,k) lies inside 2^(nS +- gamma sqrt(n)).
/// Differs from the first-order window by boundary classes; both ends are
/// reported so the disagreement is visible. n <= 4096.
struct WindowComparison {
  TypicalWindow window;
  long exact_lo = 0;
  long exact_hi = 0;
  long lo_delta = 0;  // exact_lo - window.k_lo
  long hi_delta = 0;  // exact_hi - window.k_hi
};
WindowComparison typical_window_exact_set(const TwoTermState& s, double gamma,
                                          long n);

/// Total weight of the type classes outside the window,
///   sum_{k not in window} C(n,k) p^k q^(n-k),
/// summed tail-first with compensated accumulation so no 1 - (near 1)
/// cancellation occurs. n <= 100000.
double atypical_weight_exact(const TwoTermState& s, const TypicalWindow& w);

/// Exact rational value of the same sum (n <= 4096). The probability used is
/// the binary value of p, taken exactly.
mpq_class atypical_weight_rational(const TwoTermState& s,
                                   const TypicalWindow& w);

/// Gaussian-limit atypical weight 2 Q(x) for x = gamma/alpha > 0.
double atypical_weight_gaussian(double x);

/// Residual left after chopping each typical class's degeneracy to whole
/// multiples of the cap 2^(nS - omega sqrt(n)), omega > gamma:
///   asymptotic = 2^(-(omega-gamma) sqrt(n)) / ln(q/p)
///   finite_n   = (2^(-omega sqrt(n)) / ln(q/p)) (2^(gamma sqrt(n)) - 2^(-gamma sqrt(n)))
struct EpsilonLp2Bound {
  double asymptotic = 0;
  double finite_n = 0;
};
EpsilonLp2Bound epsilon_lp2_bound(const TwoTermState& s, double gamma,
                                  double omega, long n);

/// Brute-force value of the capped residual: per typical class,
/// r_k = C(n,k) - cap * floor(C(n,k)/cap) weighted by p^k q^(n-k).
/// The cap has a non-integer exponent, so this runs in arbitrary-precision
/// real arithmetic internally. n <= 4096.
double epsilon_lp2_exact(const TwoTermState& s, double gamma, double omega,
                         long n);

/// Largest admissible gamma/alpha for a rank-2 atypical-weight allowance:
///   sqrt(W(2 / (pi eps^2))).
/// Inverts the Mills upper bound, so mills_sandwich(result).upper returns
/// eps. Monotone decreasing in eps.
double gamma_from_error_two_term(double eps_lp1);

/// Largest admissible gamma/omega_t for the m-term allowance:
///   sqrt(W(1 / (2 pi (eps/2)^(2/(m-1))))).
/// At m = 2 this lands on the same expression as the rank-2 inversion; the
/// two are still computed independently and compared, never merged.
double gamma_from_error_general(double eps_lp1, int m);

/// Tail bound for the m-term typical region at x = gamma/omega_t:
///   final_bound       = 2 [exp(-x^2/2) / (sqrt(2 pi) x)]^(m-1)
///   central_mass_form = 2 Q(x)^(m-1)   (the un-bounded intermediate)
struct MultinomialAtypicalBound {
  double final_bound = 0;
  double central_mass_form = 0;
};
MultinomialAtypicalBound multinomial_atypical_bound(double x, int m);

/// log2 of the typical Schmidt count sum_{k in window} C(n,k), exact
/// big-integer arithmetic. n <= 100000.
double typical_schmidt_log2(const TwoTermState& s, const TypicalWindow& w);

/// Entropy ledger of the typical component.
///   unnormalized: sum_w C p^k q^(n-k) (-log2 p^k q^(n-k)), exactly as summed
///   normalized:   entropy of the renormalized typical state,
///                 unnormalized / weight + log2(weight)
///   ratio_to_limit: unnormalized / (n S (1 - eps_lp1))
struct TypicalEntropy {
  double unnormalized = 0;
  double normalized = 0;
  double window_weight = 0;
  double ratio_to_limit = 0;
};
TypicalEntropy typical_entropy(const TwoTermState& s, const TypicalWindow& w);

/// Typicality test data for an m-term state. half_width = gamma / omega_t is
/// the per-axis box radius.
struct MultinomialTypicalSpec {
  SchmidtState state;
  long n = 0;
  double gamma = 0;
  double omega_t = 0;

  double half_width() const { return gamma / omega_t; }
};

/// Per-composition typicality report. The box condition |y_i| <= gamma/omega_t
/// on every axis is what the tail bound integrates over; the linear form
/// sum omega_i y_i (stored order, base-2 coefficients) is the first-order
/// image of the degeneracy deviation and |linear_form| <= gamma is the
/// condition the window inverts. Both are reported.
struct MultinomialMembership {
  std::vector<double> y;
  double linear_form = 0;
  bool box_typical = false;
  bool slab_typical = false;
};
MultinomialMembership multinomial_is_typical(const MultinomialTypicalSpec& spec,
                                             std::span<const long> counts);

}  // namespace ebound
