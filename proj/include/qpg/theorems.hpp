#ifndef QPG_THEOREMS_HPP
#define QPG_THEOREMS_HPP

#include <optional>
#include <string_view>

#include "qpg/qcore.hpp"

// Functions built on psi_q: the completely monotonic combinations, the four
// increasing functions with their double inequalities, the coefficient sums
// behind the complete-monotonicity argument, and the classical limits.
//
// Composite err_bound values use first-order propagation with a 2x safety
// factor. That is a heuristic; only the underlying series bounds are rigorous.

namespace qpg::theorems {

/// The four increasing functions. Phi and Varphi live on q > 1, PhiSub and
/// ThetaSub on 0 < q < 1.
enum class Theorem2Kind { PhiSuper, VarphiSuper, PhiSub, ThetaSub };

std::string_view to_string(Theorem2Kind kind) noexcept;
Branch admissible_branch(Theorem2Kind kind) noexcept;

struct BoundsPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// ln(e^t - 1) for t > 0 without overflow for large t.
double log_expm1(double t);

/// q > 1: [psi'_q]^2 + psi''_q. 0 < q < 1: [psi'_q - ln q]^2 + psi''_q.
/// Throws ClassicalBranch at q = 1; see theorem1_classical.
Certified theorem1_value(const QParam& p, double x, const SeriesPolicy& policy = {});

/// psi''(x) + [psi'(x)]^2.
Certified theorem1_classical(double x);

/// n-th x-derivative (0 <= n <= 4) of the Theorem 1 combination, expanded by
/// the Leibniz rule into q-polygamma values of order up to n + 2.
Certified theorem1_derivative(const QParam& p, int n, double x,
                              const SeriesPolicy& policy = {});

Certified theorem2_value(Theorem2Kind kind, const QParam& p, double x,
                         const SeriesPolicy& policy = {});

/// Lower and upper envelopes of psi_q(x); psi_q(1) is evaluated once per call.
BoundsPair digamma_bounds(const QParam& p, double x, const SeriesPolicy& policy = {});

/// psi_q(x) - lower and upper - psi_q(x), evaluated from the Lambert sums so
/// that gaps far below the size of psi_q itself keep their relative accuracy.
struct SandwichGaps {
  double lower_gap = 0.0;
  double upper_gap = 0.0;
  double lower_err = 0.0;
  double upper_err = 0.0;
};
SandwichGaps sandwich_gaps(const QParam& p, double x, const SeriesPolicy& policy = {});

/// Both sides of the reduced coefficient inequality for index i >= 3, q > 1:
/// lower = sum_j j(i-j)/((q^j-1)(1-q^{i-j})), upper = (i-2)i/((ln q)(1-q^i)).
BoundsPair proof_inequality_sides(int i, double q);

/// sum_{j=1}^{i-1} j(i-j)(q^{i-j}-q^j)/((q^j-1)(q^{i-j}-1)), identically zero.
double antisymmetry_sum(int i, double q);

/// c_i(q, x) = i (ln q) q^{-ix} / (1 - q^{-i}); i >= 1, q > 1, x >= 0.
double c_coeff(int i, double q, double x);

/// 1 + sum_{i=2}^{I} sum_{j=1}^{i-1} c_j c_{i-j} - sum_{i=1}^{I} (i-2) c_i.
/// Without i_max, I is the first index with c_I < 1e-16 (capped by
/// policy.max_terms).
double series_identity_lhs(const QParam& p, double x, const SeriesPolicy& policy = {},
                           std::optional<int> i_max = std::nullopt);

/// psi(x) + ln(e^{1/x} - 1), the common q -> 1 limit of the Theorem 2 functions.
Certified batir_function(double x);

/// q >= 1: psi'_q e^{psi_q}. 0 < q < 1: [psi'_q - ln q] e^{psi_q - (ln q) x}.
Certified remark2_value(const QParam& p, double x, const SeriesPolicy& policy = {});

}  // namespace qpg::theorems

#endif  // QPG_THEOREMS_HPP
