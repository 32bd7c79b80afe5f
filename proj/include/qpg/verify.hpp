#ifndef QPG_VERIFY_HPP
#define QPG_VERIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpg/theorems.hpp"

namespace qpg::verify {

enum class Spacing { Linear, Logarithmic };

struct GridSpec {
  double x_min = 0.05;
  double x_max = 30.0;
  int n_points = 64;
  Spacing spacing = Spacing::Logarithmic;

  /// Throws Error(DomainError) unless 0 < x_min < x_max and n_points >= 2.
  void validate() const;
  /// Strictly increasing; the first and last points are x_min and x_max exactly.
  std::vector<double> points() const;
};

/// Highest derivative order checked for the complete-monotonicity sign
/// pattern. Numerical checks cover n = 0..k_max only.
class CMOrder {
 public:
  static constexpr int kMax = 4;
  explicit CMOrder(int k_max);
  int k_max() const noexcept { return k_max_; }

 private:
  int k_max_;
};

struct CaseResult {
  std::string label;
  double q = 0.0;
  double x = 0.0;
  double margin = 0.0;
  double err_budget = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string suite_name;
  double q = 0.0;
  std::optional<int> k_max;
  std::vector<CaseResult> cases;
  double worst_margin = 0.0;
  bool passed = true;

  /// Sorts cases by (label, q, x) and recomputes worst_margin and passed.
  void finalize();
};

/// Concatenates reports into one suite; the result is finalized.
CheckReport merge_reports(std::string suite_name, double q, std::vector<CheckReport> parts);

/// Serialized with the CLI report schema; byte-identical for equal reports.
std::string to_json(const CheckReport& report, int indent = 2);

// Finite differences. Central stencils of fourth-order accuracy; the stencil
// reaches x +- 2h (orders 1-2) or x +- 3h (orders 3-4) and must stay in (0, inf).

using ScalarFn = std::function<double(double)>;

double finite_difference(const ScalarFn& f, double x, int order, double h);

/// Richardson extrapolation of finite_difference over steps h and h/2, which
/// cancels the h^4 truncation term.
double richardson_difference(const ScalarFn& f, double x, int order, double h);

/// Default step for a derivative of the given order at x.
double default_step(int order, double x);

/// Margin of an analytic derivative against a central difference:
/// max(1e-5, 20 * err_budget) - |fd - analytic|.
CaseResult fd_case(std::string label, double q, double x, double fd, const Certified& analytic);

/// Ten log-spaced points on [0.5, 8] used by every finite-difference spot check.
std::vector<double> spot_points();

enum class MonotoneFn { Phi, Varphi, PhiSub, Theta, Remark2, Batir };

std::string_view to_string(MonotoneFn fn) noexcept;

/// Sign pattern (-1)^n d^n/dx^n of the Theorem 1 combination for n <= k_max,
/// plus finite-difference spot checks of every analytic derivative used.
/// budget_scale multiplies every error budget.
CheckReport check_cm_theorem1(const QParam& p, const GridSpec& grid, CMOrder order,
                              const SeriesPolicy& policy = {}, double budget_scale = 1.0);

CheckReport check_monotone(MonotoneFn fn, const QParam& p, const GridSpec& grid,
                           const SeriesPolicy& policy = {});

/// Functions whose monotonicity is asserted on the branch of p.
std::vector<MonotoneFn> monotone_functions_for(const QParam& p);

/// Strict double inequality at every grid point plus sharpness probes of the
/// lower gap at x = 1e-3 and the upper gap at x = 50 (threshold 0.02).
CheckReport check_sandwich(const QParam& p, const GridSpec& grid, const SeriesPolicy& policy = {});

inline constexpr double kLowerProbeX = 1e-3;
inline constexpr double kUpperProbeX = 50.0;
inline constexpr double kSharpnessThreshold = 0.02;

/// Log-gamma reflection, the psi/psi'/psi'' transport under q -> 1/q, the
/// difference equations for k = 1, 2, 3 and the exp-phi identity.
CheckReport check_identities(const QParam& p, const GridSpec& grid,
                             const SeriesPolicy& policy = {});

/// Coefficient inequality for i in [3, 60], the antisymmetric zero sum and the
/// double-sum representation of the Theorem 1 combination, all at q or 1/q
/// (whichever exceeds 1).
CheckReport check_proof(const QParam& p, const SeriesPolicy& policy = {});

}  // namespace qpg::verify

#endif  // QPG_VERIFY_HPP
