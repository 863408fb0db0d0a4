#include "ebound/typical_sets.hpp"

#include "ebound/special_functions.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ebound {

namespace {

constexpr long kMaxExactWindowN = 4096;

void require_window_args(double gamma, long n) {
  if (!(gamma > 0) || !std::isfinite(gamma)) {
    throw std::domain_error("gamma must be positive and finite");
  }
  if (n < 1) {
    throw std::domain_error("block size must be at least 1");
  }
}

// log pmf of Binomial(n, p) at k, natural log.
double log_pmf(long n, long k, double p, double q) {
  return std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) -
         std::lgamma(double(n - k) + 1) + double(k) * std::log(p) +
         double(n - k) * std::log(q);
}

}  // namespace

TypicalWindow typical_window(const TwoTermState& s, double gamma, long n) {
  require_window_args(gamma, n);
  if (s.degenerate()) {
    throw std::domain_error(
        "typical window is undefined for a degenerate state");
  }
  const double p = s.p();
  const double half =
      gamma * std::sqrt(double(n)) / std::log2(s.q() / p);
  const double center = double(n) * p;
  TypicalWindow w;
  w.n = n;
  w.gamma = gamma;
  w.k_lo = std::max(0L, static_cast<long>(std::ceil(center - half)));
  w.k_hi = std::min(n, static_cast<long>(std::floor(center + half)));
  if (w.k_lo > w.k_hi) {
    throw std::domain_error("typical window is empty at this gamma, n");
  }
  return w;
}

WindowComparison typical_window_exact_set(const TwoTermState& s, double gamma,
                                          long n) {
  if (n > kMaxExactWindowN) {
    throw std::domain_error("exact window comparison supports n <= 4096");
  }
  WindowComparison cmp;
  cmp.window = typical_window(s, gamma, n);
  const double ns = double(n) * entropy(s);
  const double band = gamma * std::sqrt(double(n));
  auto member = [&](long k) {
    const double lg = log2_mpz(exact_binomial(n, k));
    return lg >= ns - band && lg <= ns + band;
  };
  // Grow a contiguous run outward from the weight mode; the mirror-image
  // band of equal degeneracies on the other side of n/2 is not part of it.
  long k0 = std::lround(double(n) * s.p());
  k0 = std::clamp(k0, 0L, n);
  if (!member(k0)) {
    throw std::domain_error("mode class falls outside the degeneracy band");
  }
  long lo = k0;
  while (lo > 0 && member(lo - 1)) --lo;
  long hi = k0;
  while (hi < n && member(hi + 1)) ++hi;
  cmp.exact_lo = lo;
  cmp.exact_hi = hi;
  cmp.lo_delta = lo - cmp.window.k_lo;
  cmp.hi_delta = hi - cmp.window.k_hi;
  return cmp;
}

double atypical_weight_exact(const TwoTermState& s, const TypicalWindow& w) {
  const long n = w.n;
  const double p = s.p();
  const double q = s.q();
  NeumaierSum acc;
  // Each tail is summed from the window edge outward, so terms only shrink.
  if (w.k_lo > 0) {
    double pmf = std::exp(log_pmf(n, w.k_lo - 1, p, q));
    for (long k = w.k_lo - 1; k >= 0 && pmf > 0; --k) {
      acc.add(pmf);
      pmf *= double(k) / double(n - k + 1) * (q / p);
    }
  }
  if (w.k_hi < n) {
    double pmf = std::exp(log_pmf(n, w.k_hi + 1, p, q));
    for (long k = w.k_hi + 1; k <= n && pmf > 0; ++k) {
      acc.add(pmf);
      pmf *= double(n - k) / double(k + 1) * (p / q);
    }
  }
  return acc.value();
}

mpq_class atypical_weight_rational(const TwoTermState& s,
                                   const TypicalWindow& w) {
  const long n = w.n;
  if (n > kMaxExactWindowN) {
    throw std::domain_error("rational atypical weight supports n <= 4096");
  }
  // p is a binary rational; with den = 2^e the whole sum shares one
  // denominator den^n, so the tails accumulate in integers.
  const mpq_class p_exact(s.p());
  const mpz_class den = p_exact.get_den();
  const mpz_class p_num = p_exact.get_num();
  const mpz_class q_num = den - p_num;
  if (q_num == 0) {
    throw std::domain_error("rational atypical weight needs p < 1/2 exactly");
  }
  mpz_class power;  // p_num^k * q_num^(n-k)
  mpz_pow_ui(power.get_mpz_t(), q_num.get_mpz_t(), n);
  mpz_class total = 0;
  for (long k = 0; k <= n; ++k) {
    if (k < w.k_lo || k > w.k_hi) {
      total += exact_binomial(n, k) * power;
    }
    if (k < n) {
      power *= p_num;
      mpz_divexact(power.get_mpz_t(), power.get_mpz_t(), q_num.get_mpz_t());
    }
  }
  mpz_class full_den;
  mpz_pow_ui(full_den.get_mpz_t(), den.get_mpz_t(), n);
  mpq_class result(total, full_den);
  result.canonicalize();
  return result;
}

double atypical_weight_gaussian(double x) {
  if (!(x > 0)) {
    throw std::domain_error("gaussian atypical weight needs x > 0");
  }
  return 2 * gaussian_upper_tail(x);
}

EpsilonLp2Bound epsilon_lp2_bound(const TwoTermState& s, double gamma,
                                  double omega, long n) {
  require_window_args(gamma, n);
  if (s.degenerate()) {
    throw std::domain_error(
        "the chopping residual is undefined for a degenerate state");
  }
  if (!(omega > gamma)) {
    throw std::domain_error("omega must exceed gamma");
  }
  const double root_n = std::sqrt(double(n));
  const double log_ratio = std::log(s.q() / s.p());
  const double t = omega * root_n;
  const double g = gamma * root_n;
  EpsilonLp2Bound b;
  b.asymptotic = std::exp2(g - t) / log_ratio;
  if (t < 900 && g < 900) {
    b.finite_n = std::exp2(-t) / log_ratio * (std::exp2(g) - std::exp2(-g));
  } else {
    b.finite_n = b.asymptotic * (1 - std::exp2(-2 * g));
  }
  return b;
}

double epsilon_lp2_exact(const TwoTermState& s, double gamma, double omega,
                         long n) {
  if (n > kMaxExactWindowN) {
    throw std::domain_error("exact chopping residual supports n <= 4096");
  }
  const TypicalWindow w = typical_window(s, gamma, n);
  if (!(omega > gamma)) {
    throw std::domain_error("omega must exceed gamma");
  }
  const mpfr_prec_t prec = n + 128;
  mpfr_t pm, qm, cap, work, quot, resid, weight, acc, exponent;
  mpfr_inits2(prec, pm, qm, cap, work, quot, resid, weight, acc, exponent,
              static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(pm, s.p(), MPFR_RNDN);
  mpfr_ui_sub(qm, 1, pm, MPFR_RNDN);

  // exponent = n S - omega sqrt(n), entropy evaluated at full precision so
  // the cap 2^exponent carries no double-rounding of n S.
  mpfr_log2(work, pm, MPFR_RNDN);
  mpfr_mul(exponent, pm, work, MPFR_RNDN);
  mpfr_log2(work, qm, MPFR_RNDN);
  mpfr_fma(exponent, qm, work, exponent, MPFR_RNDN);
  mpfr_mul_si(exponent, exponent, -n, MPFR_RNDN);
  mpfr_sqrt_ui(work, n, MPFR_RNDN);
  mpfr_mul_d(work, work, omega, MPFR_RNDN);
  mpfr_sub(exponent, exponent, work, MPFR_RNDN);
  mpfr_exp2(cap, exponent, MPFR_RNDN);

  mpfr_set_zero(acc, 1);
  for (long k = w.k_lo; k <= w.k_hi; ++k) {
    const mpz_class degeneracy = exact_binomial(n, k);
    mpfr_set_z(work, degeneracy.get_mpz_t(), MPFR_RNDN);
    mpfr_div(quot, work, cap, MPFR_RNDN);
    mpfr_floor(quot, quot);
    mpfr_fms(resid, quot, cap, work, MPFR_RNDN);
    mpfr_neg(resid, resid, MPFR_RNDN);
    mpfr_pow_ui(weight, pm, k, MPFR_RNDN);
    mpfr_pow_ui(work, qm, n - k, MPFR_RNDN);
    mpfr_mul(weight, weight, work, MPFR_RNDN);
    mpfr_fma(acc, resid, weight, acc, MPFR_RNDN);
  }
  const double out = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clears(pm, qm, cap, work, quot, resid, weight, acc, exponent,
              static_cast<mpfr_ptr>(nullptr));
  return out;
}

double gamma_from_error_two_term(double eps_lp1) {
  if (!(eps_lp1 > 0) || !(eps_lp1 < 1)) {
    throw std::domain_error("atypical-weight allowance must lie in (0, 1)");
  }
  const double arg = 2 / (std::numbers::pi * eps_lp1 * eps_lp1);
  return std::sqrt(lambert_w0(arg));
}

double gamma_from_error_general(double eps_lp1, int m) {
  if (m < 2) {
    throw std::domain_error("need at least two terms");
  }
  if (!(eps_lp1 > 0) || !(eps_lp1 < 2)) {
    throw std::domain_error("atypical-weight allowance must lie in (0, 2)");
  }
  const double arg =
      1 / (2 * std::numbers::pi *
           std::pow(eps_lp1 / 2, 2.0 / double(m - 1)));
  return std::sqrt(lambert_w0(arg));
}

MultinomialAtypicalBound multinomial_atypical_bound(double x, int m) {
  if (m < 2) {
    throw std::domain_error("need at least two terms");
  }
  if (!(x > 0)) {
    throw std::domain_error("tail bound needs x > 0");
  }
  MultinomialAtypicalBound b;
  const double root_2pi = std::sqrt(2 * std::numbers::pi);
  b.final_bound = 2 / std::pow(root_2pi * x, m - 1) *
                  std::exp(-double(m - 1) * x * x / 2);
  b.central_mass_form = 2 * std::pow(gaussian_upper_tail(x), m - 1);
  return b;
}

double typical_schmidt_log2(const TwoTermState& s, const TypicalWindow& w) {
  (void)s;
  const long n = w.n;
  mpz_class total = 0;
  mpz_class binom = exact_binomial(n, w.k_lo);
  for (long k = w.k_lo; k <= w.k_hi; ++k) {
    total += binom;
    if (k < w.k_hi) {
      binom *= (n - k);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), k + 1);
    }
  }
  return log2_mpz(total);
}

TypicalEntropy typical_entropy(const TwoTermState& s, const TypicalWindow& w) {
  const long n = w.n;
  const double p = s.p();
  const double q = s.q();
  const double lp = std::log2(p);
  const double lq = std::log2(q);
  NeumaierSum weight;
  NeumaierSum raw;
  double pmf = std::exp(log_pmf(n, w.k_lo, p, q));
  for (long k = w.k_lo; k <= w.k_hi; ++k) {
    weight.add(pmf);
    raw.add(pmf * -(double(k) * lp + double(n - k) * lq));
    if (k < w.k_hi) {
      pmf *= double(n - k) / double(k + 1) * (p / q);
    }
  }
  TypicalEntropy e;
  e.window_weight = weight.value();
  e.unnormalized = raw.value();
  e.normalized = e.unnormalized / e.window_weight + std::log2(e.window_weight);
  e.ratio_to_limit =
      e.unnormalized / (double(n) * entropy(s) * e.window_weight);
  return e;
}

MultinomialMembership multinomial_is_typical(const MultinomialTypicalSpec& spec,
                                             std::span<const long> counts) {
  const auto& probs = spec.state.probs();
  const std::size_t m = probs.size();
  if (counts.size() != m) {
    throw std::invalid_argument("counts must match the Schmidt rank");
  }
  if (!(spec.gamma > 0) || !(spec.omega_t > 0) || spec.n < 1) {
    throw std::domain_error("typicality spec needs gamma, omega_t, n > 0");
  }
  long total = 0;
  for (long c : counts) {
    if (c < 0) {
      throw std::invalid_argument("counts must be nonnegative");
    }
    total += c;
  }
  if (total != spec.n) {
    throw std::invalid_argument("counts must sum to the block size");
  }

  MultinomialMembership mem;
  mem.y.reserve(m - 1);
  const std::vector<double> omegas = omega_vector(spec.state);
  const double half = spec.half_width();
  mem.box_typical = true;
  double tail_prob = 1;   // mass not yet assigned: pi_{i-1}
  long remaining = spec.n;
  NeumaierSum form;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double next_tail = tail_prob - probs[i];
    const double variance =
        double(spec.n) * probs[i] * next_tail / tail_prob;
    if (!(variance > 0)) {
      throw std::domain_error("conditional variance underflowed");
    }
    const double expected = double(remaining) * probs[i] / tail_prob;
    const double y = (double(counts[i]) - expected) / std::sqrt(variance);
    mem.y.push_back(y);
    if (std::abs(y) > half) mem.box_typical = false;
    form.add(omegas[i] * y);
    tail_prob = next_tail;
    remaining -= counts[i];
  }
  mem.linear_form = form.value();
  mem.slab_typical = std::abs(mem.linear_form) <= spec.gamma;
  return mem;
}

}  // namespace ebound
