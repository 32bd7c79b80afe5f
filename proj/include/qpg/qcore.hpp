#ifndef QPG_QCORE_HPP
#define QPG_QCORE_HPP

#include "qpg/qparam.hpp"

// Certified evaluation of the q-gamma family.
//
// For 0 < q < 1 the functions are built from the Lambert-type series
//
//     S_m(p, x) = sum_{n >= 1} n^m p^{n x} / (1 - p^n),   p = q,
//
// and for q > 1 from the same series in the base p = 1/q. Every result
// carries a rigorous bound on the discarded tail of that series; floating
// point rounding is not part of err_bound.

namespace qpg {

/// Smallest x accepted by the q-series; below it the series needs more than
/// O(1e6) terms at double precision.
inline constexpr double kMinSeriesX = 1e-4;

/// ln Gamma_q(x). The classical branch delegates to log_gamma_classical.
Certified log_q_gamma(const QParam& p, double x, const SeriesPolicy& policy = {});

/// psi_q(x), the logarithmic derivative of Gamma_q.
Certified q_digamma(const QParam& p, double x, const SeriesPolicy& policy = {});

/// psi_q^{(m)}(x) for 0 <= m <= 6. The super-unit branch is evaluated by
/// term-wise differentiation of its own series, not by reflection.
Certified q_polygamma(const QParam& p, DerivOrder d, double x,
                      const SeriesPolicy& policy = {});

/// The Lambert sum S_m(p, x) in the base p = min(q, 1/q), certified relative
/// to itself. Exposed for callers that need the small O(p^x) parts of psi_q
/// without cancelling against its O(1) constant.
Certified lambert_sum(const QParam& p, DerivOrder d, double x, const SeriesPolicy& policy = {});

/// psi_{1/q}(x) obtained from psi_q(x) - (ln q)(x - 3/2).
Certified reflect_digamma(const QParam& p, double x, const SeriesPolicy& policy = {});

// Classical (q = 1) functions. Upward recurrence to x >= 20 followed by the
// Stirling-type asymptotic expansion; the remainder of the expansion is
// bounded by its first omitted term.

Certified log_gamma_classical(double x);
Certified digamma_classical(double x);
/// Orders 1..6.
Certified polygamma_classical(DerivOrder d, double x);

}  // namespace qpg

#endif  // QPG_QCORE_HPP
