#include "qpg/theorems.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace qpg::theorems {
namespace {

constexpr double kSafety = 2.0;

void require_positive(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw Error(Errc::DomainError, "x must be a finite positive number");
  }
}

void require_q_branch(const QParam& p, const char* what) {
  if (p.branch() == Branch::Classical) {
    throw Error(Errc::ClassicalBranch, std::string(what) + " is not defined at q = 1");
  }
}

// The two bracket exponents, both positive on either branch:
//   small = lambda p^x / (1 - p^x),  large = lambda / (1 - p^x) = small + lambda,
// with p = min(q, 1/q) and lambda = |ln q|. On 0 < q < 1 these are
// (ln q) q^x/(q^x - 1) and (ln q)/(q^x - 1); on q > 1 the roles swap.
struct Exponents {
  double small;
  double large;
};

Exponents exponents(const QParam& p, double x) {
  const double lambda = p.lambda();
  const double one_minus = -std::expm1(-lambda * x);
  return {lambda * std::exp(-lambda * x) / one_minus, lambda / one_minus};
}

double checked_log_expm1(double t) {
  const double v = log_expm1(t);
  if (!std::isfinite(v)) {
    throw Error(Errc::LogDomain, "exp(t) - 1 is not positive after rounding (t = " +
                                     std::to_string(t) + ")");
  }
  return v;
}

// ln((e^u - 1)/u), positive for u > 0.
double log_expm1_over_u(double u) {
  if (u < 1e-3) {
    const double u2 = u * u;
    return u / 2 + u2 / 24 - u2 * u2 / 2880 + u2 * u2 * u2 / 181440;
  }
  return log_expm1(u) - std::log(u);
}

}  // namespace

std::string_view to_string(Theorem2Kind kind) noexcept {
  switch (kind) {
    case Theorem2Kind::PhiSuper: return "phi";
    case Theorem2Kind::VarphiSuper: return "varphi";
    case Theorem2Kind::PhiSub: return "phi_sub";
    case Theorem2Kind::ThetaSub: return "theta";
  }
  return "unknown";
}

Branch admissible_branch(Theorem2Kind kind) noexcept {
  return kind == Theorem2Kind::PhiSuper || kind == Theorem2Kind::VarphiSuper ? Branch::SuperUnit
                                                                              : Branch::SubUnit;
}

double log_expm1(double t) {
  if (t > 30.0) return t + std::log1p(-std::exp(-t));
  return std::log(std::expm1(t));
}

Certified theorem1_value(const QParam& p, double x, const SeriesPolicy& policy) {
  return theorem1_derivative(p, 0, x, policy);
}

Certified theorem1_classical(double x) {
  const Certified d1 = polygamma_classical(DerivOrder(1), x);
  const Certified d2 = polygamma_classical(DerivOrder(2), x);
  return {d1.value * d1.value + d2.value,
          kSafety * (2.0 * std::abs(d1.value) * d1.err_bound + d2.err_bound),
          std::max(d1.terms_used, d2.terms_used)};
}

Certified theorem1_derivative(const QParam& p, int n, double x, const SeriesPolicy& policy) {
  require_q_branch(p, "the Theorem 1 combination");
  if (n < 0) throw Error(Errc::DomainError, "derivative order must be nonnegative");
  if (n > 4) throw Error(Errc::OrderTooLarge, "Theorem 1 derivatives are capped at order 4");

  // a[k] = d^k/dx^k (psi'_q - s), s = ln q on the sub-unit branch.
  std::array<Certified, 6> a{};
  for (int k = 0; k <= n; ++k) a[k] = q_polygamma(p, DerivOrder(k + 1), x, policy);
  if (p.branch() == Branch::SubUnit) a[0].value -= p.ln_q();
  const Certified tail = q_polygamma(p, DerivOrder(n + 2), x, policy);

  double value = tail.value;
  double err = tail.err_bound;
  double binom = 1.0;
  std::int64_t terms = tail.terms_used;
  for (int k = 0; k <= n; ++k) {
    const Certified& l = a[k];
    const Certified& r = a[n - k];
    value += binom * l.value * r.value;
    err += binom * (std::abs(l.value) * r.err_bound + std::abs(r.value) * l.err_bound);
    terms = std::max(terms, l.terms_used);
    binom = binom * (n - k) / (k + 1);
  }
  return {value, kSafety * err, terms};
}

Certified theorem2_value(Theorem2Kind kind, const QParam& p, double x,
                         const SeriesPolicy& policy) {
  require_positive(x);
  if (p.branch() != admissible_branch(kind)) {
    throw Error(Errc::BranchMismatch, std::string(to_string(kind)) + " requires " +
                                          std::string(to_string(admissible_branch(kind))));
  }
  const Exponents t = exponents(p, x);
  Certified psi = q_digamma(p, x, policy);

  double extra = 0.0;
  switch (kind) {
    case Theorem2Kind::PhiSuper: extra = checked_log_expm1(t.large); break;
    case Theorem2Kind::VarphiSuper: extra = checked_log_expm1(t.small); break;
    // -(ln q) x = lambda x on the sub-unit branch.
    case Theorem2Kind::PhiSub: extra = p.lambda() * x + checked_log_expm1(t.small); break;
    case Theorem2Kind::ThetaSub: extra = p.lambda() * x + checked_log_expm1(t.large); break;
  }
  return {psi.value + extra, kSafety * psi.err_bound, psi.terms_used};
}

BoundsPair digamma_bounds(const QParam& p, double x, const SeriesPolicy& policy) {
  require_positive(x);
  require_q_branch(p, "the digamma envelope");
  const double lambda = p.lambda();
  const double psi1 = q_digamma(p, 1.0, policy).value;
  // ln(ln q / (q - 1)) is real on both branches.
  const double log_ratio = std::log(p.ln_q() / std::expm1(p.ln_q()));
  const double bracket = checked_log_expm1(exponents(p, x).small);

  if (p.branch() == Branch::SubUnit) {
    return {psi1 - lambda * x - bracket, log_ratio - lambda * x - bracket};
  }
  return {psi1 - lambda - bracket, log_ratio - 0.5 * lambda - bracket};
}

SandwichGaps sandwich_gaps(const QParam& p, double x, const SeriesPolicy& policy) {
  require_positive(x);
  require_q_branch(p, "the digamma envelope");
  // On both branches, with u = lambda p^x/(1 - p^x) and S = S_0:
  //   psi_q(x) - lower = lambda (x + S(1) - S(x)) + ln(e^u - 1)
  //   upper - psi_q(x) = lambda S(x) + ln(1 - p^x) - ln((e^u - 1)/u)
  const double lambda = p.lambda();
  const Certified s_x = lambert_sum(p, DerivOrder(0), x, policy);
  const Certified s_1 = lambert_sum(p, DerivOrder(0), 1.0, policy);
  const double u = exponents(p, x).small;

  SandwichGaps g;
  g.lower_gap = lambda * (x + s_1.value - s_x.value) + checked_log_expm1(u);
  g.upper_gap = lambda * s_x.value + std::log1p(-std::exp(-lambda * x)) - log_expm1_over_u(u);
  g.lower_err = kSafety * lambda * (s_x.err_bound + s_1.err_bound);
  g.upper_err = kSafety * lambda * s_x.err_bound;
  return g;
}

BoundsPair proof_inequality_sides(int i, double q) {
  if (i < 3 || !std::isfinite(q) || !(q > 1.0)) {
    throw Error(Errc::DomainError, "proof inequality needs i >= 3 and q > 1");
  }
  const double ln_q = std::log(q);
  auto qm1 = [&](int k) { return std::expm1(k * ln_q); };  // q^k - 1
  double lower = 0.0;
  for (int j = 1; j < i; ++j) {
    lower += static_cast<double>(j) * (i - j) / (qm1(j) * -qm1(i - j));
  }
  const double upper = static_cast<double>(i - 2) * i / (ln_q * -qm1(i));
  return {lower, upper};
}

double antisymmetry_sum(int i, double q) {
  if (i < 2 || !std::isfinite(q) || !(q > 1.0)) {
    throw Error(Errc::DomainError, "antisymmetry sum needs i >= 2 and q > 1");
  }
  const double ln_q = std::log(q);
  double sum = 0.0;
  for (int j = 1; j < i; ++j) {
    const double a = std::expm1(j * ln_q);
    const double b = std::expm1((i - j) * ln_q);
    // q^{i-j} - q^j = (q^{i-j} - 1) - (q^j - 1)
    sum += static_cast<double>(j) * (i - j) * (b - a) / (a * b);
  }
  return sum;
}

double c_coeff(int i, double q, double x) {
  if (i < 1 || !std::isfinite(q) || !(q > 1.0) || !std::isfinite(x) || x < 0.0) {
    throw Error(Errc::DomainError, "c_i(q, x) needs i >= 1, q > 1, x >= 0");
  }
  const double ln_q = std::log(q);
  return i * ln_q * std::exp(-i * x * ln_q) / -std::expm1(-i * ln_q);
}

double series_identity_lhs(const QParam& p, double x, const SeriesPolicy& policy,
                           std::optional<int> i_max) {
  require_positive(x);
  if (p.branch() != Branch::SuperUnit) {
    throw Error(Errc::DomainError, "the double-sum representation needs q > 1");
  }
  if (i_max && *i_max < 1) throw Error(Errc::DomainError, "i_max must be positive");

  std::vector<double> c{0.0};  // c[0] unused
  if (i_max) {
    for (int i = 1; i <= *i_max; ++i) c.push_back(c_coeff(i, p.q(), x));
  } else {
    for (int i = 1;; ++i) {
      if (i > policy.max_terms) {
        throw Error(Errc::ToleranceNotMet, "c_i did not fall below 1e-16 within max_terms");
      }
      c.push_back(c_coeff(i, p.q(), x));
      if (c.back() < 1e-16) break;
    }
  }
  const int n = static_cast<int>(c.size()) - 1;

  double value = 1.0;
  for (int i = 2; i <= n; ++i) {
    for (int j = 1; j < i; ++j) value += c[j] * c[i - j];
  }
  for (int i = 1; i <= n; ++i) value -= (i - 2) * c[i];
  return value;
}

Certified batir_function(double x) {
  require_positive(x);
  const Certified psi = digamma_classical(x);
  return {psi.value + checked_log_expm1(1.0 / x), kSafety * psi.err_bound, psi.terms_used};
}

Certified remark2_value(const QParam& p, double x, const SeriesPolicy& policy) {
  require_positive(x);
  const Certified psi = q_digamma(p, x, policy);
  const Certified d1 = q_polygamma(p, DerivOrder(1), x, policy);
  double factor = d1.value;
  double exponent = psi.value;
  if (p.branch() == Branch::SubUnit) {
    factor -= p.ln_q();
    exponent -= p.ln_q() * x;
  }
  const double e = std::exp(exponent);
  return {factor * e, kSafety * (e * d1.err_bound + std::abs(factor * e) * psi.err_bound),
          std::max(psi.terms_used, d1.terms_used)};
}

}  // namespace qpg::theorems
