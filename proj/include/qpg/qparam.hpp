#ifndef QPG_QPARAM_HPP
#define QPG_QPARAM_HPP

#include <cstdint>
#include <string_view>

#include "qpg/error.hpp"

namespace qpg {

enum class Branch { SubUnit, Classical, SuperUnit };

std::string_view to_string(Branch b) noexcept;

/// Half-width of the band around q = 1 treated as the classical case.
inline constexpr double kClassicalBand = 1e-12;

/// Validated deformation parameter. Construct through classify().
class QParam {
 public:
  double q() const noexcept { return q_; }
  Branch branch() const noexcept { return branch_; }
  /// ln q; exactly zero on the classical branch.
  double ln_q() const noexcept { return ln_q_; }

  /// Magnitude |ln q|, the decay rate of the series in the sub-unit base.
  double lambda() const noexcept { return ln_q_ < 0 ? -ln_q_ : ln_q_; }

  /// The base p in (0, 1) of the series: q itself, or 1/q when q > 1.
  double base() const noexcept { return branch_ == Branch::SuperUnit ? 1.0 / q_ : q_; }

  /// The parameter on the other side of the reflection q -> 1/q.
  QParam reciprocal() const;

 private:
  friend QParam classify(double q);
  QParam(double q, Branch b, double ln_q) : q_(q), branch_(b), ln_q_(ln_q) {}

  double q_;
  Branch branch_;
  double ln_q_;
};

/// Throws Error(NonPositiveQ) for q <= 0, NaN or infinity.
QParam classify(double q);

/// Truncation controls shared by every series evaluation.
struct SeriesPolicy {
  double rel_tol = 1e-13;
  double abs_tol = 1e-300;
  std::int64_t max_terms = 1'000'000;

  /// Throws Error(DomainError) when a field violates its range.
  void validate() const;

  /// Truncation target for a value of the given magnitude.
  double target(double value) const noexcept;
};

/// A value together with a rigorous bound on its truncation error.
struct Certified {
  double value = 0.0;
  double err_bound = 0.0;
  std::int64_t terms_used = 0;
};

/// Derivative order of psi_q; 0 is psi_q itself.
struct DerivOrder {
  static constexpr int kMax = 6;

  explicit DerivOrder(int order);
  int m() const noexcept { return m_; }

 private:
  int m_;
};

}  // namespace qpg

#endif  // QPG_QPARAM_HPP
