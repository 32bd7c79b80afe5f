#include <algorithm>
#include <cmath>
#include <string>

#include "qpg/qcore.hpp"

namespace qpg {
namespace {

// Neumaier compensated sum; the Lambert series run to 1e5+ terms near q = 1.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_series_x(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw Error(Errc::DomainError, "x must be a finite positive number");
  }
  if (x < kMinSeriesX) {
    throw Error(Errc::ToleranceNotMet,
                "x = " + std::to_string(x) + " is below the series floor " +
                    std::to_string(kMinSeriesX));
  }
}

[[noreturn]] void tolerance_not_met(const SeriesPolicy& policy) {
  throw Error(Errc::ToleranceNotMet, "tail bound above tolerance after max_terms = " +
                                         std::to_string(policy.max_terms) + " terms");
}

// ln(1 - e^{-y}) for y > 0, accurate at both ends.
double log1m_exp(double y) {
  const double e = std::exp(-y);
  return e < 0.5 ? std::log1p(-e) : std::log(-std::expm1(-y));
}

// Evaluates offset + coef * S_m, where
//
//     S_m = sum_{n >= 1} n^m e^{-n lambda x} / (1 - e^{-n lambda}).
//
// After N terms the tail is majorized by a_{N+1} / (1 - rho) with
// rho = ((N + 2) / (N + 1))^m e^{-lambda x}: the ratio of consecutive
// numerators is at most rho for n > N and the denominators only grow.
Certified lambert_series(double lambda, int m, double x, double offset, double coef,
                         const SeriesPolicy& policy) {
  const double decay = std::exp(-lambda * x);
  auto term = [&](double n) {
    const double log_num = m * std::log(n) - n * lambda * x;
    return std::exp(log_num) / -std::expm1(-n * lambda);
  };

  CompensatedSum sum;
  double next = term(1.0);
  for (std::int64_t n = 1; n <= policy.max_terms; ++n) {
    sum.add(next);
    const double dn = static_cast<double>(n);
    next = term(dn + 1.0);
    const double rho = std::pow((dn + 2.0) / (dn + 1.0), m) * decay;
    if (rho < 1.0) {
      const double tail = std::abs(coef) * next / (1.0 - rho);
      const double value = offset + coef * sum.value();
      if (tail <= policy.target(value)) return {value, tail, n};
    }
  }
  tolerance_not_met(policy);
}

}  // namespace

Certified log_q_gamma(const QParam& p, double x, const SeriesPolicy& policy) {
  policy.validate();
  if (p.branch() == Branch::Classical) return log_gamma_classical(x);
  require_series_x(x);

  const double lambda = p.lambda();
  const double log1m_p = log1m_exp(lambda);  // ln(1 - p)

  // Sub-unit: (1 - x) ln(1 - q). Super-unit: (1 - x) ln(q - 1) + C(x, 2) ln q,
  // with ln(q - 1) = ln q + ln(1 - 1/q).
  double offset = (1.0 - x) * log1m_p;
  if (p.branch() == Branch::SuperUnit) {
    offset += (1.0 - x) * lambda + 0.5 * x * (x - 1.0) * lambda;
  }

  // Term i: ln(1 - p^{i+1}) - ln(1 - p^{i+x}). By the mean value theorem the
  // tail from i = N is at most p^N |p - p^x| / ((1 - p)(1 - p^N max(p, p^x))).
  const double gap = std::abs(std::exp(-lambda) - std::exp(-lambda * x));
  const double top = std::exp(-lambda * std::min(1.0, x));
  const double one_minus_p = -std::expm1(-lambda);

  CompensatedSum sum;
  for (std::int64_t i = 0; i < policy.max_terms; ++i) {
    const double di = static_cast<double>(i);
    sum.add(log1m_exp(lambda * (di + 1.0)) - log1m_exp(lambda * (di + x)));
    const double pn = std::exp(-lambda * (di + 1.0));
    const double tail = pn * gap / (one_minus_p * (1.0 - pn * top));
    const double value = offset + sum.value();
    if (tail <= policy.target(value)) return {value, tail, i + 1};
  }
  tolerance_not_met(policy);
}

Certified q_digamma(const QParam& p, double x, const SeriesPolicy& policy) {
  policy.validate();
  if (p.branch() == Branch::Classical) return digamma_classical(x);
  require_series_x(x);

  const double lambda = p.lambda();
  const double log1m_p = log1m_exp(lambda);
  if (p.branch() == Branch::SubUnit) {
    // -ln(1 - q) + (ln q) sum_k q^{kx} / (1 - q^k)
    return lambert_series(lambda, 0, x, -log1m_p, -lambda, policy);
  }
  // -ln(q - 1) + (ln q)[x - 1/2 - sum_i q^{-ix} / (1 - q^{-i})]
  const double offset = -(lambda + log1m_p) + lambda * (x - 0.5);
  return lambert_series(lambda, 0, x, offset, -lambda, policy);
}

Certified q_polygamma(const QParam& p, DerivOrder d, double x, const SeriesPolicy& policy) {
  const int m = d.m();
  if (m == 0) return q_digamma(p, x, policy);
  policy.validate();
  if (p.branch() == Branch::Classical) return polygamma_classical(d, x);
  require_series_x(x);

  const double lambda = p.lambda();
  if (p.branch() == Branch::SubUnit) {
    // (ln q)^{m+1} sum_n n^m q^{nx} / (1 - q^n)
    return lambert_series(lambda, m, x, 0.0, std::pow(-lambda, m + 1), policy);
  }
  // (ln q)[[m = 1] - (-ln q)^m sum_i i^m q^{-ix} / (1 - q^{-i})]
  const double offset = m == 1 ? lambda : 0.0;
  return lambert_series(lambda, m, x, offset, -lambda * std::pow(-lambda, m), policy);
}

Certified lambert_sum(const QParam& p, DerivOrder d, double x, const SeriesPolicy& policy) {
  policy.validate();
  if (p.branch() == Branch::Classical) {
    throw Error(Errc::ClassicalBranch, "the Lambert series degenerates at q = 1");
  }
  require_series_x(x);
  return lambert_series(p.lambda(), d.m(), x, 0.0, 1.0, policy);
}

Certified reflect_digamma(const QParam& p, double x, const SeriesPolicy& policy) {
  if (p.branch() == Branch::Classical) {
    throw Error(Errc::DomainError, "reflection q -> 1/q is the identity at q = 1");
  }
  Certified r = q_digamma(p, x, policy);
  r.value -= p.ln_q() * (x - 1.5);
  return r;
}

}  // namespace qpg
