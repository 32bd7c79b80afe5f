#include "qpg/qparam.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpg {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPositiveQ: return "NonPositiveQ";
    case Errc::DomainError: return "DomainError";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::ClassicalBranch: return "ClassicalBranch";
    case Errc::BranchMismatch: return "BranchMismatch";
    case Errc::LogDomain: return "LogDomain";
  }
  return "Unknown";
}

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::SubUnit: return "SubUnit";
    case Branch::Classical: return "Classical";
    case Branch::SuperUnit: return "SuperUnit";
  }
  return "Unknown";
}

QParam classify(double q) {
  if (!std::isfinite(q) || !(q > 0.0)) {
    throw Error(Errc::NonPositiveQ, "q must be a finite positive number");
  }
  if (std::abs(q - 1.0) <= kClassicalBand) {
    return QParam(q, Branch::Classical, 0.0);
  }
  return QParam(q, q < 1.0 ? Branch::SubUnit : Branch::SuperUnit, std::log(q));
}

QParam QParam::reciprocal() const {
  if (branch_ == Branch::Classical) return *this;
  // 1/q may round; ln(1/q) must stay the exact negation of ln q.
  return QParam(1.0 / q_, branch_ == Branch::SubUnit ? Branch::SuperUnit : Branch::SubUnit,
                -ln_q_);
}

void SeriesPolicy::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_terms < 1) {
    throw Error(Errc::DomainError,
                "series policy needs rel_tol > 0, abs_tol > 0 and max_terms >= 1");
  }
}

double SeriesPolicy::target(double value) const noexcept {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

DerivOrder::DerivOrder(int order) : m_(order) {
  if (order < 0) {
    throw Error(Errc::DomainError, "derivative order must be nonnegative");
  }
  if (order > kMax) {
    throw Error(Errc::OrderTooLarge,
                "derivative order " + std::to_string(order) + " exceeds " +
                    std::to_string(kMax));
  }
}

}  // namespace qpg
