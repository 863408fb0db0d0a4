#include "ebound/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ebound {

namespace {
constexpr long kMaxBinomialN = 100000;
constexpr long kExactMultinomialLimit = 4096;
}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < 0) {
    throw std::domain_error("lambert_w0: argument must be >= 0");
  }
  if (x == 0) return 0.0;
  if (std::isinf(x)) return x;

  double w;
  if (x > 2.5) {
    double lx = std::log(x);
    w = lx - std::log(lx);
  } else {
    // crude but in the convergence basin everywhere on (0, 2.5]
    w = x / (1.0 + x);
  }
  for (int i = 0; i < 64; ++i) {
    double ew = std::exp(w);
    double f = w * ew - x;
    // Halley step
    double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0));
    double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double gaussian_upper_tail(double x) {
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

MillsSandwich mills_sandwich(double x) {
  if (!(x > 0)) {
    throw std::domain_error("mills_sandwich: argument must be > 0");
  }
  double common = std::sqrt(2.0 / M_PI) * std::exp(-0.5 * x * x);
  double raw_lower = common * (1.0 / x - 1.0 / (x * x * x));
  MillsSandwich out;
  out.upper = common / x;
  out.clamped = raw_lower < 0;
  out.lower = out.clamped ? 0.0 : raw_lower;
  return out;
}

double binary_entropy(double x) {
  if (!(x > 0) || !(x < 1)) {
    throw std::domain_error("binary_entropy: argument must be in (0, 1)");
  }
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

mpz_class exact_binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n || n > kMaxBinomialN) {
    throw std::domain_error("exact_binomial: need 0 <= k <= n <= 100000");
  }
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

mpz_class exact_multinomial(long n, std::span<const long> counts) {
  long total = 0;
  for (long c : counts) {
    if (c < 0) throw std::domain_error("exact_multinomial: negative count");
    total += c;
  }
  if (total != n) {
    throw std::domain_error("exact_multinomial: counts must sum to n");
  }
  mpz_class out = 1;
  long remaining = n;
  for (long c : counts) {
    mpz_class factor;
    mpz_bin_uiui(factor.get_mpz_t(), static_cast<unsigned long>(remaining),
                 static_cast<unsigned long>(c));
    out *= factor;
    remaining -= c;
  }
  return out;
}

double log2_mpz(const mpz_class& v) {
  if (v <= 0) {
    throw std::domain_error("log2_mpz: argument must be positive");
  }
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp2);
}

double log2_binomial_loggamma(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("log2_binomial_loggamma: need 0 <= k <= n");
  }
  double ln = std::lgamma(static_cast<double>(n) + 1.0) -
              std::lgamma(static_cast<double>(k) + 1.0) -
              std::lgamma(static_cast<double>(n - k) + 1.0);
  return ln / std::numbers::ln2;
}

double log2_multinomial_loggamma(long n, std::span<const long> counts) {
  long total = 0;
  double ln = std::lgamma(static_cast<double>(n) + 1.0);
  for (long c : counts) {
    if (c < 0) {
      throw std::domain_error("log2_multinomial_loggamma: negative count");
    }
    total += c;
    ln -= std::lgamma(static_cast<double>(c) + 1.0);
  }
  if (total != n) {
    throw std::domain_error("log2_multinomial_loggamma: counts must sum to n");
  }
  return ln / std::numbers::ln2;
}

double log2_multinomial(long n, std::span<const long> counts) {
  if (n <= kExactMultinomialLimit) {
    return log2_mpz(exact_multinomial(n, counts));
  }
  return log2_multinomial_loggamma(n, counts);
}

}  // namespace ebound
