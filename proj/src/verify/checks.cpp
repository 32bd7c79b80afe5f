#include <cmath>
#include <limits>
#include <string>

#include "qpg/verify.hpp"

namespace qpg::verify {
namespace {

using theorems::Theorem2Kind;

constexpr double kRoundingSlack = 1e-10;

// A case whose evaluation threw (e.g. ToleranceNotMet under a starved policy)
// is a failed case with the lowest representable margin.
template <class Fn>
void guarded(CheckReport& report, const std::string& label, double q, double x, Fn&& fn) {
  try {
    fn();
  } catch (const Error&) {
    report.cases.push_back({label, q, x, std::numeric_limits<double>::lowest(), 0.0, false});
  }
}

void require_q_branch(const QParam& p, const char* suite) {
  if (p.branch() == Branch::Classical) {
    throw Error(Errc::DomainError, std::string(suite) + " needs q != 1");
  }
}

SeriesPolicy tightened(const SeriesPolicy& policy) {
  SeriesPolicy t = policy;
  t.rel_tol = 1e-17;
  return t;
}

void add_residual(CheckReport& report, std::string label, double q, double x, double residual,
                  double combined) {
  const double margin = combined + kRoundingSlack - std::abs(residual);
  report.cases.push_back({std::move(label), q, x, margin, combined, margin >= 0.0});
}

Certified evaluate(MonotoneFn fn, const QParam& p, double x, const SeriesPolicy& policy) {
  switch (fn) {
    case MonotoneFn::Phi: return theorems::theorem2_value(Theorem2Kind::PhiSuper, p, x, policy);
    case MonotoneFn::Varphi:
      return theorems::theorem2_value(Theorem2Kind::VarphiSuper, p, x, policy);
    case MonotoneFn::PhiSub: return theorems::theorem2_value(Theorem2Kind::PhiSub, p, x, policy);
    case MonotoneFn::Theta: return theorems::theorem2_value(Theorem2Kind::ThetaSub, p, x, policy);
    case MonotoneFn::Remark2: return theorems::remark2_value(p, x, policy);
    case MonotoneFn::Batir: return theorems::batir_function(x);
  }
  throw Error(Errc::DomainError, "unknown function");
}

// d^{k-1}/dx^{k-1} of 1/(q^x - 1) for k = 1, 2, 3, written with
// w = 1/(q^x - 1) and yw = q^x/(q^x - 1) so that neither factor overflows.
double reciprocal_derivative(const QParam& p, int order, double x) {
  const double l = p.ln_q();
  const double w = 1.0 / std::expm1(x * l);
  const double yw = 1.0 / -std::expm1(-x * l);
  switch (order) {
    case 0: return w;
    case 1: return -l * yw * w;
    default: return l * l * yw * (yw + w) * w;
  }
}

}  // namespace

std::string_view to_string(MonotoneFn fn) noexcept {
  switch (fn) {
    case MonotoneFn::Phi: return "phi";
    case MonotoneFn::Varphi: return "varphi";
    case MonotoneFn::PhiSub: return "phi_sub";
    case MonotoneFn::Theta: return "theta";
    case MonotoneFn::Remark2: return "remark2";
    case MonotoneFn::Batir: return "batir";
  }
  return "unknown";
}

CheckReport check_cm_theorem1(const QParam& p, const GridSpec& grid, CMOrder order,
                              const SeriesPolicy& policy, double budget_scale) {
  require_q_branch(p, "the complete-monotonicity check");
  const std::vector<double> xs = grid.points();
  CheckReport report{.suite_name = "cm", .q = p.q(), .k_max = order.k_max(), .cases = {}};

  for (double x : xs) {
    for (int n = 0; n <= order.k_max(); ++n) {
      const std::string label = "cm/n=" + std::to_string(n);
      guarded(report, label, p.q(), x, [&] {
        const Certified d = theorems::theorem1_derivative(p, n, x, policy);
        const double budget = budget_scale * (d.err_bound + kRoundingSlack);
        const double signed_value = (n % 2 == 0) ? d.value : -d.value;
        const double margin = signed_value + budget;
        report.cases.push_back({label, p.q(), x, margin, budget, margin >= 0.0});
      });
    }
  }

  // Each analytic derivative against a central difference of the one below it.
  const SeriesPolicy tight = tightened(policy);
  for (int n = 1; n <= order.k_max(); ++n) {
    const std::string label = "cm/fd n=" + std::to_string(n);
    for (double x : spot_points()) {
      guarded(report, label, p.q(), x, [&] {
        auto lower = [&](double t) { return theorems::theorem1_derivative(p, n - 1, t, tight).value; };
        const double fd = richardson_difference(lower, x, 1, default_step(1, x));
        report.cases.push_back(
            fd_case(label, p.q(), x, fd, theorems::theorem1_derivative(p, n, x, policy)));
      });
    }
  }
  report.finalize();
  return report;
}

std::vector<MonotoneFn> monotone_functions_for(const QParam& p) {
  switch (p.branch()) {
    case Branch::SuperUnit:
      return {MonotoneFn::Phi, MonotoneFn::Varphi, MonotoneFn::Remark2, MonotoneFn::Batir};
    case Branch::SubUnit:
      return {MonotoneFn::PhiSub, MonotoneFn::Theta, MonotoneFn::Remark2, MonotoneFn::Batir};
    case Branch::Classical: return {MonotoneFn::Remark2, MonotoneFn::Batir};
  }
  return {};
}

CheckReport check_monotone(MonotoneFn fn, const QParam& p, const GridSpec& grid,
                           const SeriesPolicy& policy) {
  const bool super_only = fn == MonotoneFn::Phi || fn == MonotoneFn::Varphi;
  const bool sub_only = fn == MonotoneFn::PhiSub || fn == MonotoneFn::Theta;
  if ((super_only && p.branch() != Branch::SuperUnit) ||
      (sub_only && p.branch() != Branch::SubUnit)) {
    throw Error(Errc::BranchMismatch, std::string(to_string(fn)) + " is not defined for q = " +
                                          std::to_string(p.q()));
  }
  const std::vector<double> xs = grid.points();
  CheckReport report{.suite_name = "monotone", .q = p.q(), .k_max = {}, .cases = {}};
  const std::string label = "monotone/" + std::string(to_string(fn));

  std::optional<Certified> prev;
  for (double x : xs) {
    std::optional<Certified> cur;
    guarded(report, label, p.q(), x, [&] { cur = evaluate(fn, p, x, policy); });
    if (prev && cur) {
      const double budget = prev->err_bound + cur->err_bound + kRoundingSlack;
      const double margin = cur->value - prev->value + budget;
      report.cases.push_back({label, p.q(), x, margin, budget, margin >= 0.0});
    }
    prev = cur;
  }
  report.finalize();
  return report;
}

CheckReport check_sandwich(const QParam& p, const GridSpec& grid, const SeriesPolicy& policy) {
  if (p.branch() == Branch::Classical) {
    throw Error(Errc::BranchMismatch, "the double inequalities need q != 1");
  }
  const std::vector<double> xs = grid.points();
  CheckReport report{.suite_name = "sandwich", .q = p.q(), .k_max = {}, .cases = {}};

  for (double x : xs) {
    guarded(report, "sandwich/strict", p.q(), x, [&] {
      const theorems::SandwichGaps g = theorems::sandwich_gaps(p, x, policy);
      const double margin = std::min(g.lower_gap - g.lower_err, g.upper_gap - g.upper_err);
      const double budget = std::max(g.lower_err, g.upper_err);
      report.cases.push_back({"sandwich/strict", p.q(), x, margin, budget, margin > 0.0});
    });
  }

  // Best-possible constants: the gaps close at the two ends of (0, inf).
  guarded(report, "sandwich/sharp_lower", p.q(), kLowerProbeX, [&] {
    const theorems::SandwichGaps g = theorems::sandwich_gaps(p, kLowerProbeX, policy);
    const double margin = kSharpnessThreshold - g.lower_gap;
    report.cases.push_back({"sandwich/sharp_lower", p.q(), kLowerProbeX, margin, g.lower_err,
                            margin > 0.0 && g.lower_gap > -g.lower_err});
  });
  guarded(report, "sandwich/sharp_upper", p.q(), kUpperProbeX, [&] {
    const theorems::SandwichGaps g = theorems::sandwich_gaps(p, kUpperProbeX, policy);
    const double margin = kSharpnessThreshold - g.upper_gap;
    report.cases.push_back({"sandwich/sharp_upper", p.q(), kUpperProbeX, margin, g.upper_err,
                            margin > 0.0 && g.upper_gap > -g.upper_err});
  });
  report.finalize();
  return report;
}

CheckReport check_identities(const QParam& p, const GridSpec& grid, const SeriesPolicy& policy) {
  if (p.branch() == Branch::Classical) {
    throw Error(Errc::BranchMismatch, "the q -> 1/q identities need q != 1");
  }
  const std::vector<double> xs = grid.points();
  const QParam r = p.reciprocal();
  const double q = p.q();
  const double ln_q = p.ln_q();
  CheckReport report{.suite_name = "identities", .q = q, .k_max = {}, .cases = {}};

  for (double x : xs) {
    guarded(report, "identity/loggamma_reflection", q, x, [&] {
      const Certified a = log_q_gamma(p, x, policy);
      const Certified b = log_q_gamma(r, x, policy);
      const double binom = 0.5 * (x - 1.0) * (x - 2.0);
      add_residual(report, "identity/loggamma_reflection", q, x,
                   a.value - (binom * ln_q + b.value), a.err_bound + b.err_bound);
    });

    // psi_q = (ln q)(x - 3/2) + psi_{1/q}, psi'_q = ln q + psi'_{1/q}, psi''_q = psi''_{1/q}.
    for (int m = 0; m <= 2; ++m) {
      static constexpr const char* kLabels[] = {"identity/transport_psi",
                                                "identity/transport_psi1",
                                                "identity/transport_psi2"};
      guarded(report, kLabels[m], q, x, [&] {
        const Certified a = q_polygamma(p, DerivOrder(m), x, policy);
        const Certified b = q_polygamma(r, DerivOrder(m), x, policy);
        const double shift = m == 0 ? ln_q * (x - 1.5) : (m == 1 ? ln_q : 0.0);
        add_residual(report, kLabels[m], q, x, a.value - (shift + b.value),
                     a.err_bound + b.err_bound);
      });
    }

    // psi^{(k-1)}(x+1) - psi^{(k-1)}(x) = (ln q) d^{k-1}/dx^{k-1} [q^x/(q^x - 1)] for k = 1 and
    // (ln q) d^{k-1}/dx^{k-1} [1/(q^x - 1)] for k >= 2; both branches share these forms.
    for (int k = 1; k <= 3; ++k) {
      const std::string label = "identity/difference_k" + std::to_string(k);
      guarded(report, label, q, x, [&] {
        const Certified a = q_polygamma(p, DerivOrder(k - 1), x + 1.0, policy);
        const Certified b = q_polygamma(p, DerivOrder(k - 1), x, policy);
        const double rhs = k == 1 ? ln_q / -std::expm1(-x * ln_q)
                                  : ln_q * reciprocal_derivative(p, k - 1, x);
        add_residual(report, label, q, x, a.value - b.value - rhs, a.err_bound + b.err_bound);
      });
    }

    // exp(phi) = exp(psi(x+1)) - exp(psi(x)) (q > 1) and its shifted form for
    // Phi_q (0 < q < 1), both divided through by the larger exponential.
    guarded(report, "identity/exp_phi", q, x, [&] {
      const Theorem2Kind kind =
          p.branch() == Branch::SuperUnit ? Theorem2Kind::PhiSuper : Theorem2Kind::PhiSub;
      const Certified phi = theorems::theorem2_value(kind, p, x, policy);
      const Certified a = q_digamma(p, x + 1.0, policy);
      const Certified b = q_digamma(p, x, policy);
      const double shift = kind == Theorem2Kind::PhiSub ? ln_q * x : 0.0;
      const double residual =
          std::exp(phi.value + shift - a.value) - 1.0 + std::exp(b.value - a.value);
      add_residual(report, "identity/exp_phi", q, x, residual,
                   2.0 * (phi.err_bound + a.err_bound + b.err_bound));
    });
  }
  report.finalize();
  return report;
}

CheckReport check_proof(const QParam& p, const SeriesPolicy& policy) {
  if (p.branch() == Branch::Classical) {
    throw Error(Errc::DomainError, "the coefficient argument needs q != 1");
  }
  const QParam sup = p.branch() == Branch::SuperUnit ? p : p.reciprocal();
  const double q = sup.q();
  CheckReport report{.suite_name = "proof", .q = p.q(), .k_max = {}, .cases = {}};

  for (int i = 3; i <= 60; ++i) {
    const theorems::BoundsPair b = theorems::proof_inequality_sides(i, q);
    const double margin = b.upper - b.lower;
    report.cases.push_back({"proof/simplify_ineq", q, static_cast<double>(i), margin, 0.0,
                            margin > 0.0});
  }

  for (int i = 3; i <= 20; ++i) {
    double scale = 0.0;
    for (int j = 1; j < i; ++j) {
      const double a = std::expm1(j * sup.ln_q());
      const double c = std::expm1((i - j) * sup.ln_q());
      scale += std::abs(static_cast<double>(j) * (i - j) * (c - a) / (a * c));
    }
    const double budget = kRoundingSlack * std::max(1.0, scale);
    const double margin = budget - std::abs(theorems::antisymmetry_sum(i, q));
    report.cases.push_back({"proof/antisymmetry", q, static_cast<double>(i), margin, budget,
                            margin >= 0.0});
  }

  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    guarded(report, "proof/double_sum", q, x, [&] {
      const double direct =
          theorems::theorem1_value(sup, x, policy).value / (sup.ln_q() * sup.ln_q());
      const double series = theorems::series_identity_lhs(sup, x, policy);
      const double budget = 1e-8 * std::abs(direct);
      const double margin = budget - std::abs(series - direct);
      report.cases.push_back({"proof/double_sum", q, x, margin, budget, margin >= 0.0});
    });
  }
  report.finalize();
  return report;
}

}  // namespace qpg::verify
