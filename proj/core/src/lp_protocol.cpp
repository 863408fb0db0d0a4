#include "ebound/lp_protocol.hpp"

#include "ebound/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace ebound {

namespace {

constexpr long kMaxExactRank2N = 100000;
constexpr int kMaxGeneralExactRank = 6;
constexpr long kMaxGeneralExactN = 300;
constexpr long kCompositionBudget = 20000000;
constexpr double kDefaultOmegaOffset = 0.2;

double mes_log2_or_throw(double entropy_bits, double gamma, long n) {
  if (!(gamma > 0) || !std::isfinite(gamma)) {
    throw std::domain_error("gamma must be positive and finite");
  }
  if (n < 1) {
    throw std::domain_error("block size must be at least 1");
  }
  const double d = double(n) * entropy_bits - gamma * std::sqrt(double(n));
  if (d <= 0) {
    throw std::domain_error("no typical MES factor at this gamma, n");
  }
  return d;
}

// Walks every composition of n into m parts, keeping the exact multinomial
// coefficient, the log2 product weight, and the per-axis fluctuation data
// incrementally along the prefix.
class CompositionClassifier {
 public:
  CompositionClassifier(const SchmidtState& s, long n, double gamma,
                        double box_half)
      : probs_(s.probs()),
        omegas_(omega_vector(s)),
        n_(n),
        gamma_(gamma),
        box_half_(box_half) {
    log2_probs_.reserve(probs_.size());
    for (double p : probs_) log2_probs_.push_back(std::log2(p));
    const double ns = double(n) * entropy(s);
    const double band = gamma * std::sqrt(double(n));
    band_lo_ = ns - band;
    band_hi_ = ns + band;
  }

  void run() { descend(0, n_, 1, 0.0, NeumaierSum{}, true, 1.0); }

  NeumaierSum slab_atypical;
  NeumaierSum box_atypical;
  NeumaierSum window_atypical;
  NeumaierSum slab_weight;
  NeumaierSum slab_entropy_raw;
  mpz_class slab_count = 0;
  long slab_classes = 0;
  long window_classes = 0;
  long compositions = 0;

 private:
  void descend(std::size_t axis, long remaining, mpz_class coeff,
               double log2_weight, NeumaierSum form, bool in_box,
               double tail_prob) {
    const std::size_t m = probs_.size();
    if (axis == m - 1) {
      classify(coeff, log2_weight + double(remaining) * log2_probs_[axis],
               form, in_box);
      return;
    }
    const double next_tail = tail_prob - probs_[axis];
    const double expected = double(remaining) * probs_[axis] / tail_prob;
    const double spread =
        std::sqrt(double(n_) * probs_[axis] * next_tail / tail_prob);
    mpz_class binom = 1;
    for (long k = 0; k <= remaining; ++k) {
      const double y = (double(k) - expected) / spread;
      NeumaierSum child_form = form;
      child_form.add(omegas_[axis] * y);
      descend(axis + 1, remaining - k, coeff * binom,
              log2_weight + double(k) * log2_probs_[axis], child_form,
              in_box && std::abs(y) <= box_half_, next_tail);
      if (k < remaining) {
        binom *= (remaining - k);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), k + 1);
      }
    }
  }

  void classify(const mpz_class& coeff, double log2_weight,
                const NeumaierSum& form, bool in_box) {
    ++compositions;
    const double log2_coeff = log2_mpz(coeff);
    const double pmf = std::exp2(log2_coeff + log2_weight);
    if (std::abs(form.value()) <= gamma_) {
      ++slab_classes;
      slab_weight.add(pmf);
      slab_entropy_raw.add(pmf * -log2_weight);
      slab_count += coeff;
    } else {
      slab_atypical.add(pmf);
    }
    if (!in_box) box_atypical.add(pmf);
    if (log2_coeff >= band_lo_ && log2_coeff <= band_hi_) {
      ++window_classes;
    } else {
      window_atypical.add(pmf);
    }
  }

  const std::vector<double>& probs_;
  std::vector<double> omegas_;
  std::vector<double> log2_probs_;
  long n_;
  double gamma_;
  double box_half_;
  double band_lo_ = 0;
  double band_hi_ = 0;
};

}  // namespace

LPDecomposition decompose(const TwoTermState& s, long n, double gamma,
                          LPMode mode, std::optional<double> omega) {
  if (s.degenerate()) {
    throw std::domain_error("decomposition needs a non-degenerate state");
  }
  const double d = mes_log2_or_throw(entropy(s), gamma, n);
  const double cap_omega = omega.value_or(gamma + kDefaultOmegaOffset);

  LPDecomposition out;
  out.probs = s.as_state().probs();
  out.n = n;
  out.gamma = gamma;
  out.mode = mode;
  out.mes_log2 = d;
  out.omega = cap_omega;

  const EpsilonLp2Bound chop = epsilon_lp2_bound(s, gamma, cap_omega, n);
  if (mode == LPMode::asymptotic) {
    const double scale = gamma * std::sqrt(double(n));
    out.sch_delta_log2 = 2 * scale;
    out.entropy_delta = scale;
    out.cc_cost_bits = 2 * scale;
    out.inefficiency_ebits = scale;
    out.eps_lp1 = atypical_weight_gaussian(gamma / surprisal_stddev(s));
    out.eps_lp2_bound = chop.asymptotic;
    return out;
  }

  if (n > kMaxExactRank2N) {
    throw std::domain_error("exact mode supports n <= 100000");
  }
  const TypicalWindow w = typical_window(s, gamma, n);
  const TypicalEntropy ent = typical_entropy(s, w);
  out.sch_delta_log2 = typical_schmidt_log2(s, w) - d;
  out.entropy_delta = ent.normalized - d;
  out.eps_lp1 = atypical_weight_exact(s, w);
  out.eps_lp2_bound = chop.finite_n;
  out.cc_cost_bits = out.sch_delta_log2;
  out.inefficiency_ebits = out.sch_delta_log2 - out.entropy_delta;
  return out;
}

CcLedger cc_cost(const LPDecomposition& d) {
  CcLedger ledger;
  ledger.qubits_teleported = d.sch_delta_log2;
  ledger.naive_bits = 2 * d.sch_delta_log2;
  ledger.bits = d.cc_cost_bits;
  return ledger;
}

double trace_distance_from_error(double eps_lp1, TraceDistanceMode mode) {
  if (!(eps_lp1 >= 0) || !(eps_lp1 < 1)) {
    throw std::domain_error("atypical weight must lie in [0, 1)");
  }
  if (mode == TraceDistanceMode::linearized) return 2 * eps_lp1;
  return 2 * std::sqrt(eps_lp1);
}

double trace_distance_to_ideal(const LPDecomposition& d,
                               TraceDistanceMode mode) {
  return trace_distance_from_error(d.eps_lp1, mode);
}

LPDecomposition decompose_general(const SchmidtState& s, long n, double gamma,
                                  LPMode mode, OmegaStrategy strategy,
                                  OmegaLogBase base) {
  const double d = mes_log2_or_throw(entropy(s), gamma, n);
  const int m = static_cast<int>(s.rank());
  const OmegaT cap = omega_t(s, strategy, base);

  LPDecomposition out;
  out.probs = s.probs();
  out.n = n;
  out.gamma = gamma;
  out.mode = mode;
  out.mes_log2 = d;
  out.omega_t = cap;

  if (mode == LPMode::asymptotic) {
    const double scale = gamma * std::sqrt(double(n));
    out.sch_delta_log2 = 2 * scale;
    out.entropy_delta = scale;
    out.cc_cost_bits = 2 * scale;
    out.inefficiency_ebits = scale;
    out.eps_lp1 = multinomial_atypical_bound(gamma / cap.value, m).final_bound;
    return out;
  }

  if (m > kMaxGeneralExactRank || n > kMaxGeneralExactN) {
    throw std::domain_error(
        "exact general mode supports rank <= 6 and n <= 300; "
        "use asymptotic mode");
  }
  const mpz_class composition_count = exact_binomial(n + m - 1, m - 1);
  if (composition_count > kCompositionBudget) {
    throw std::domain_error(
        "composition count exceeds the enumeration budget; "
        "use asymptotic mode");
  }

  // Classification geometry stays in base-2 exponent units: gamma is a
  // base-2 exponent coefficient, so the slab and box compare against
  // base-2 omegas whatever display base was requested.
  const OmegaT cap2 = base == OmegaLogBase::base2
                          ? cap
                          : omega_t(s, strategy, OmegaLogBase::base2);
  CompositionClassifier walker(s, n, gamma, gamma / cap2.value);
  walker.run();
  if (walker.slab_count == 0) {
    throw std::domain_error("typical set is empty at this gamma, n");
  }

  out.eps_lp1 = walker.slab_atypical.value();
  out.sch_delta_log2 = log2_mpz(walker.slab_count) - d;
  const double weight = walker.slab_weight.value();
  const double normalized =
      walker.slab_entropy_raw.value() / weight + std::log2(weight);
  out.entropy_delta = normalized - d;
  out.cc_cost_bits = out.sch_delta_log2;
  out.inefficiency_ebits = out.sch_delta_log2 - out.entropy_delta;

  GeneralDiagnostics diag;
  diag.eps_lp1_box = walker.box_atypical.value();
  diag.eps_lp1_degeneracy_window = walker.window_atypical.value();
  diag.slab_class_count = walker.slab_classes;
  diag.degeneracy_window_class_count = walker.window_classes;
  diag.composition_count = walker.compositions;
  out.general = diag;
  return out;
}

}  // namespace ebound
