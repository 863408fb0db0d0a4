#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebound {

/// A bipartite pure state by its Schmidt probabilities.
///
/// Construction validates: every p_i > 0, sum = 1 within 1e-12 absolute,
/// at least two terms. There is no silent renormalization; out-of-tolerance
/// input is an error. The stored order is preserved (coordinate orderings
/// matter downstream); a sorted view is available separately.
class SchmidtState {
 public:
  explicit SchmidtState(std::vector<double> probs, std::string label = {});

  /// Accepts "0.43,0.57" or a bracketed array "[0.43, 0.57]".
  static SchmidtState parse(std::string_view text, std::string label = {});

  const std::vector<double>& probs() const { return probs_; }
  const std::string& label() const { return label_; }
  std::size_t rank() const { return probs_.size(); }

  std::vector<double> ascending() const;
  /// Index permutation that sorts the stored probabilities ascending.
  std::vector<std::size_t> ascending_ordering() const;

 private:
  std::vector<double> probs_;
  std::string label_;
};

/// Rank-2 state, kept as the smaller probability p in (0, 1/2].
/// p = 1/2 is the degenerate case: the target is already maximally
/// entangled and the window machinery refuses it downstream.
class TwoTermState {
 public:
  explicit TwoTermState(double p);
  static TwoTermState from_state(const SchmidtState& s);

  double p() const { return p_; }
  double q() const { return 1.0 - p_; }
  bool degenerate() const { return p_ == 0.5; }
  SchmidtState as_state() const;

 private:
  double p_;
};

/// Entanglement entropy -sum p_i log2 p_i, in ebits per copy.
double entropy(const SchmidtState& s);
double entropy(const TwoTermState& s);

/// Standard deviation of the per-copy surprisal -log2 p_i:
///   sqrt(sum_i p_i (log2 p_i + S)^2).
/// This is the sqrt(N) fluctuation scale every bound here is built on.
double surprisal_stddev(const SchmidtState& s);
/// Rank-2 closed form sqrt(pq) log2(q/p); agrees with the general sum.
double surprisal_stddev(const TwoTermState& s);

enum class OmegaLogBase { base2, natural };

/// Per-axis fluctuation coefficients of the multinomial typical region under
/// a coordinate ordering. With pi_i = 1 - p_1 - ... - p_i (pi_0 = 1),
///   omega_i = sqrt(p_i / (pi_i pi_{i-1})) * sum_{j>i} p_j log(p_j / p_i)
/// for i = 1 .. m-1. Throws if some pi_i underflows to <= 0.
std::vector<double> omega_vector(const SchmidtState& s,
                                 std::span<const std::size_t> ordering,
                                 OmegaLogBase base = OmegaLogBase::base2);
/// Stored-order overload.
std::vector<double> omega_vector(const SchmidtState& s,
                                 OmegaLogBase base = OmegaLogBase::base2);

enum class OmegaStrategy { sorted_prescription, minimax_ordering, explicit_value };

/// A uniform cap on the |omega_i| of a state, with the ordering that
/// certifies it. Admissibility means value >= |omega_i| for all i under
/// that ordering.
struct OmegaT {
  double value = 0;
  OmegaStrategy strategy = OmegaStrategy::sorted_prescription;
  OmegaLogBase log_base = OmegaLogBase::base2;
  double max_abs_omega = 0;
  std::vector<std::size_t> ordering;
};

/// sorted_prescription: ascending probabilities, cap from the closed-form
///   sqrt(p_{b-1}/(pi_{b-1} pi_{b-2})) * sum_{i>=2} p_i log(p_i/p_1),
///   which dominates every |omega_i| of the ascending ordering.
/// minimax_ordering: min over all orderings of max_i |omega_i| (m <= 8).
/// explicit_value: caller-supplied cap, rejected if below some |omega_i|
///   of the ascending ordering.
OmegaT omega_t(const SchmidtState& s, OmegaStrategy strategy,
               OmegaLogBase base = OmegaLogBase::base2,
               std::optional<double> explicit_value = std::nullopt);

}  // namespace ebound
