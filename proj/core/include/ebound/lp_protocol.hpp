#pragma once

#include "ebound/states.hpp"
#include "ebound/typical_sets.hpp"

#include <optional>
#include <vector>

namespace ebound {

enum class LPMode { asymptotic, exact_finite_n };

/// `linearized` is the additive reading 2 eps_lp1 used by the downstream
/// budget split; `exact_pure_state` is the trace distance between the state
/// and its renormalized typical component with orthogonal residual,
/// 2 sqrt(eps_lp1). The two are never substituted for each other.
enum class TraceDistanceMode { linearized, exact_pure_state };

/// Exact-enumeration classification diagnostics for a general-state
/// decomposition. The typical set itself is the slab |sum_i Omega_i y_i| <=
/// gamma; the per-axis box and the raw degeneracy band are the two
/// alternative readings, reported so their disagreement is visible.
struct GeneralDiagnostics {
  double eps_lp1_box = 0;
  double eps_lp1_degeneracy_window = 0;
  long slab_class_count = 0;
  long degeneracy_window_class_count = 0;
  long composition_count = 0;
};

/// Resource ledger of one dilution decomposition psi^n ~ MES (x) residual.
/// mes_log2 is d, the log2 of the maximally entangled factor's dimension,
/// kept real-valued. eps_lp2_bound and omega are absent on the general-state
/// path (the chopping bound is a rank-2 result); omega_t and general are
/// present only on the general-state path.
struct LPDecomposition {
  std::vector<double> probs;
  long n = 0;
  double gamma = 0;
  LPMode mode = LPMode::asymptotic;
  double mes_log2 = 0;
  double sch_delta_log2 = 0;
  double entropy_delta = 0;
  double eps_lp1 = 0;
  std::optional<double> eps_lp2_bound;
  std::optional<double> omega;
  double cc_cost_bits = 0;
  double inefficiency_ebits = 0;
  std::optional<OmegaT> omega_t;
  std::optional<GeneralDiagnostics> general;
};

/// Rank-2 decomposition at block size n and window coefficient gamma.
///   d = n S - gamma sqrt(n)  (throws when <= 0)
/// Asymptotic mode: sch_delta = 2 gamma sqrt(n), entropy_delta =
/// gamma sqrt(n), eps_lp1 = 2 Q(gamma/alpha). Exact mode: the same
/// quantities from full window enumeration (n <= 100000).
/// omega defaults to gamma + 0.2 and feeds the chopping bound;
/// asymptotic mode reports the bound's asymptotic form, exact mode the
/// finite-n form.
LPDecomposition decompose(const TwoTermState& s, long n, double gamma,
                          LPMode mode, std::optional<double> omega = {});

/// Classical-communication ledger: the residual register is teleported
/// (2 bits per qubit naively) and remote state preparation halves that, so
/// the booked cost equals sch_delta_log2 bits in both modes.
struct CcLedger {
  double qubits_teleported = 0;
  double naive_bits = 0;
  double bits = 0;
};
CcLedger cc_cost(const LPDecomposition& d);

double trace_distance_from_error(double eps_lp1, TraceDistanceMode mode);
double trace_distance_to_ideal(const LPDecomposition& d,
                               TraceDistanceMode mode);

/// Rank-m decomposition. Asymptotic mode works at any rank and uses the
/// tail bound at x = gamma / Omega_t, with Omega_t from the requested
/// strategy and log base. Exact mode enumerates every composition of n into
/// m parts (m <= 6, n <= 300, and at most ~2e7 compositions, else it throws
/// directing to asymptotic mode); classification geometry is fixed to
/// base-2 exponent units regardless of the display base.
LPDecomposition decompose_general(
    const SchmidtState& s, long n, double gamma, LPMode mode,
    OmegaStrategy strategy = OmegaStrategy::sorted_prescription,
    OmegaLogBase base = OmegaLogBase::base2);

}  // namespace ebound
