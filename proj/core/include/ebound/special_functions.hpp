#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <span>

namespace ebound {

/// Principal branch of the Lambert W function on [0, inf).
/// Returns w >= 0 with w*exp(w) = x to relative residual 1e-12.
/// Throws std::domain_error for x < 0.
double lambert_w0(double x);

/// Upper tail Q(x) of the standard normal distribution.
double gaussian_upper_tail(double x);

/// Closed-form bracket around the two-sided Gaussian tail 2*Q(x):
///   lower = sqrt(2/pi) (1/x - 1/x^3) exp(-x^2/2)
///   upper = sqrt(2/pi) (1/x)         exp(-x^2/2)
/// The raw lower expression is negative for x < 1; it is clamped to 0 and
/// `clamped` set. The bracket contains 2*Q(x) for every x >= 1.
struct MillsSandwich {
  double lower = 0;
  double upper = 0;
  bool clamped = false;
};
MillsSandwich mills_sandwich(double x);

/// -x log2 x - (1-x) log2(1-x) on the open interval (0, 1).
/// Endpoints are a domain error; the limit value 0 is never returned silently.
double binary_entropy(double x);

/// Exact binomial coefficient, 0 <= k <= n <= 100000.
mpz_class exact_binomial(long n, long k);

/// Exact multinomial coefficient n! / prod(counts_i!), sum(counts) = n.
mpz_class exact_multinomial(long n, std::span<const long> counts);

/// log2 of a positive big integer, accurate to double precision.
double log2_mpz(const mpz_class& v);

/// log2 of the binomial coefficient via log-gamma. Not exact; used on the
/// large-n side of the crossover and as the cross-check for the exact path.
double log2_binomial_loggamma(long n, long k);

/// log2 of the multinomial coefficient via log-gamma.
double log2_multinomial_loggamma(long n, std::span<const long> counts);

/// log2 of the multinomial coefficient. Exact big-integer arithmetic for
/// n <= 4096, log-gamma beyond; the two paths agree to 1e-9 and each is
/// exposed above for cross-validation.
double log2_multinomial(long n, std::span<const long> counts);

/// Compensated accumulator. Adding values in any order changes the result
/// by at most a few ulp, which keeps enumeration sums order-stable.
struct NeumaierSum {
  double sum = 0;
  double compensation = 0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

}  // namespace ebound
