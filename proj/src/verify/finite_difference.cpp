#include <algorithm>
#include <array>
#include <cmath>

#include "qpg/verify.hpp"

namespace qpg::verify {
namespace {

struct Stencil {
  int reach;
  std::array<double, 7> weights;  // offsets -3..3
  double denom;
};

// Fourth-order accurate central stencils.
constexpr std::array<Stencil, 4> kStencils{{
    {2, {0, 1, -8, 0, 8, -1, 0}, 12},
    {2, {0, -1, 16, -30, 16, -1, 0}, 12},
    {3, {1, -8, 13, 0, -13, 8, -1}, 8},
    {3, {-1, 12, -39, 56, -39, 12, -1}, 6},
}};

}  // namespace

double finite_difference(const ScalarFn& f, double x, int order, double h) {
  if (order < 1 || order > 4) throw Error(Errc::DomainError, "order must be in [1, 4]");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(Errc::DomainError, "h must be positive");
  const Stencil& s = kStencils[order - 1];
  if (!(x - s.reach * h > 0.0)) {
    throw Error(Errc::DomainError, "finite-difference stencil leaves (0, inf)");
  }
  double acc = 0.0;
  for (int k = -3; k <= 3; ++k) {
    const double w = s.weights[k + 3];
    if (w != 0.0) acc += w * f(x + k * h);
  }
  return acc / (s.denom * std::pow(h, order));
}

double richardson_difference(const ScalarFn& f, double x, int order, double h) {
  const double coarse = finite_difference(f, x, order, h);
  const double fine = finite_difference(f, x, order, 0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

double default_step(int order, double x) {
  return order <= 2 ? std::max(1e-4, 1e-3 * x) : std::max(1e-3, 3e-3 * x);
}

CaseResult fd_case(std::string label, double q, double x, double fd, const Certified& analytic) {
  const double budget = std::max(1e-5, 20.0 * analytic.err_bound);
  const double margin = budget - std::abs(fd - analytic.value);
  return {std::move(label), q, x, margin, budget, margin >= 0.0};
}

}  // namespace qpg::verify
