#include "ebound/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ebound {

namespace {
constexpr double kNormalizationTolerance = 1e-12;
constexpr std::size_t kMaxMinimaxRank = 8;
}  // namespace

SchmidtState::SchmidtState(std::vector<double> probs, std::string label)
    : probs_(std::move(probs)), label_(std::move(label)) {
  if (probs_.size() < 2) {
    throw std::invalid_argument(
        "SchmidtState: need at least two Schmidt terms (a single term is a "
        "product state)");
  }
  double sum = 0;
  for (double p : probs_) {
    if (!(p > 0) || !std::isfinite(p)) {
      throw std::invalid_argument(
          "SchmidtState: every probability must be finite and > 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument(
        "SchmidtState: probabilities must sum to 1 within 1e-12 (no implicit "
        "renormalization)");
  }
}

SchmidtState SchmidtState::parse(std::string_view text, std::string label) {
  std::string cleaned(text);
  std::erase_if(cleaned, [](char c) {
    return c == '[' || c == ']' || c == ' ' || c == '\t';
  });
  if (cleaned.empty()) {
    throw std::invalid_argument("SchmidtState::parse: empty input");
  }
  std::vector<double> probs;
  std::size_t start = 0;
  while (start <= cleaned.size()) {
    std::size_t comma = cleaned.find(',', start);
    std::string token = cleaned.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (token.empty()) {
      throw std::invalid_argument("SchmidtState::parse: empty entry");
    }
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw std::invalid_argument("SchmidtState::parse: not a number: " + token);
    }
    probs.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return SchmidtState(std::move(probs), std::move(label));
}

std::vector<double> SchmidtState::ascending() const {
  std::vector<double> out = probs_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> SchmidtState::ascending_ordering() const {
  std::vector<std::size_t> idx(probs_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return probs_[a] < probs_[b];
  });
  return idx;
}

TwoTermState::TwoTermState(double p) : p_(p) {
  if (!(p > 0) || !(p <= 0.5)) {
    throw std::invalid_argument("TwoTermState: p must lie in (0, 1/2]");
  }
}

TwoTermState TwoTermState::from_state(const SchmidtState& s) {
  if (s.rank() != 2) {
    throw std::invalid_argument("TwoTermState: state must have rank 2");
  }
  return TwoTermState(std::min(s.probs()[0], s.probs()[1]));
}

SchmidtState TwoTermState::as_state() const {
  return SchmidtState({p_, 1.0 - p_});
}

double entropy(const SchmidtState& s) {
  double acc = 0;
  for (double p : s.probs()) acc -= p * std::log2(p);
  return acc;
}

double entropy(const TwoTermState& s) {
  return -s.p() * std::log2(s.p()) - s.q() * std::log2(s.q());
}

double surprisal_stddev(const SchmidtState& s) {
  double shannon = entropy(s);
  double acc = 0;
  for (double p : s.probs()) {
    double dev = std::log2(p) + shannon;
    acc += p * dev * dev;
  }
  return std::sqrt(acc);
}

double surprisal_stddev(const TwoTermState& s) {
  return std::sqrt(s.p() * s.q()) * std::log2(s.q() / s.p());
}

namespace {

double log_in_base(double x, OmegaLogBase base) {
  return base == OmegaLogBase::base2 ? std::log2(x) : std::log(x);
}

std::vector<double> omega_for_permuted(std::span<const double> p,
                                       OmegaLogBase base) {
  std::size_t m = p.size();
  std::vector<double> out(m - 1);
  double pi_prev = 1.0;
  for (std::size_t i = 0; i < m - 1; ++i) {
    double pi = pi_prev - p[i];
    if (!(pi > 0)) {
      throw std::domain_error(
          "omega_vector: tail probability underflowed to <= 0");
    }
    double tail = 0;
    for (std::size_t j = i + 1; j < m; ++j) {
      tail += p[j] * log_in_base(p[j] / p[i], base);
    }
    out[i] = std::sqrt(p[i] / (pi * pi_prev)) * tail;
    pi_prev = pi;
  }
  return out;
}

}  // namespace

std::vector<double> omega_vector(const SchmidtState& s,
                                 std::span<const std::size_t> ordering,
                                 OmegaLogBase base) {
  const auto& probs = s.probs();
  if (ordering.size() != probs.size()) {
    throw std::invalid_argument("omega_vector: ordering size mismatch");
  }
  std::vector<bool> seen(probs.size(), false);
  std::vector<double> permuted(probs.size());
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    std::size_t idx = ordering[i];
    if (idx >= probs.size() || seen[idx]) {
      throw std::invalid_argument("omega_vector: not a permutation");
    }
    seen[idx] = true;
    permuted[i] = probs[idx];
  }
  return omega_for_permuted(permuted, base);
}

std::vector<double> omega_vector(const SchmidtState& s, OmegaLogBase base) {
  return omega_for_permuted(s.probs(), base);
}

OmegaT omega_t(const SchmidtState& s, OmegaStrategy strategy, OmegaLogBase base,
               std::optional<double> explicit_value) {
  OmegaT out;
  out.strategy = strategy;
  out.log_base = base;

  auto max_abs = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  switch (strategy) {
    case OmegaStrategy::sorted_prescription: {
      std::vector<double> p = s.ascending();
      out.ordering = s.ascending_ordering();
      out.max_abs_omega = max_abs(omega_for_permuted(p, base));
      std::size_t b = p.size();
      double pi_last = p[b - 1];                 // pi_{b-1}
      double pi_prev = p[b - 1] + p[b - 2];      // pi_{b-2}
      double tail = 0;
      for (std::size_t i = 1; i < b; ++i) {
        tail += p[i] * log_in_base(p[i] / p[0], base);
      }
      out.value = std::sqrt(p[b - 2] / (pi_last * pi_prev)) * tail;
      break;
    }
    case OmegaStrategy::minimax_ordering: {
      if (s.rank() > kMaxMinimaxRank) {
        throw std::invalid_argument(
            "omega_t: minimax ordering search is limited to rank <= 8");
      }
      std::vector<std::size_t> perm(s.rank());
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      double best = 0;
      std::vector<std::size_t> best_perm;
      bool first = true;
      do {
        double cand = max_abs(omega_vector(s, perm, base));
        if (first || cand < best) {
          best = cand;
          best_perm = perm;
          first = false;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      out.value = best;
      out.max_abs_omega = best;
      out.ordering = std::move(best_perm);
      break;
    }
    case OmegaStrategy::explicit_value: {
      if (!explicit_value) {
        throw std::invalid_argument("omega_t: explicit strategy needs a value");
      }
      std::vector<double> p = s.ascending();
      out.ordering = s.ascending_ordering();
      out.max_abs_omega = max_abs(omega_for_permuted(p, base));
      if (*explicit_value < out.max_abs_omega) {
        throw std::invalid_argument(
            "omega_t: explicit value is below some |omega_i| and therefore "
            "not an admissible cap");
      }
      out.value = *explicit_value;
      break;
    }
  }
  return out;
}

}  // namespace ebound
