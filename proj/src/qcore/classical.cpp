#include <array>
#include <cmath>
#include <numbers>

#include "qpg/qcore.hpp"

namespace qpg {
namespace {

// B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulli{
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

constexpr double kShiftThreshold = 20.0;
constexpr double kAsymptoticRelTol = 1e-17;

void require_positive(double x) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw Error(Errc::DomainError, "x must be a finite positive number");
  }
}

int shift_count(double x) {
  return x >= kShiftThreshold ? 0 : static_cast<int>(std::ceil(kShiftThreshold - x));
}

// Sums `term(k)` for k = 1, 2, ... onto `value` until the terms stop
// decreasing or drop below the target; returns the first omitted term as
// the remainder bound. The Stirling-type expansions used here are
// enveloping for real x > 0, so that bound is rigorous.
template <class Term>
double add_asymptotic_tail(double& value, Term term) {
  double prev = INFINITY;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    const double t = term(k);
    if (std::abs(t) >= prev) return prev;
    if (std::abs(t) <= kAsymptoticRelTol * std::abs(value)) return std::abs(t);
    value += t;
    prev = std::abs(t);
  }
  return prev;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Certified log_gamma_classical(double x) {
  require_positive(x);
  const int n = shift_count(x);
  const double z = x + n;

  double value = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi);
  const double inv_z = 1.0 / z;
  const double err = add_asymptotic_tail(value, [&](std::size_t k) {
    const double two_k = 2.0 * static_cast<double>(k);
    return kBernoulli[k - 1] / (two_k * (two_k - 1.0)) * std::pow(inv_z, two_k - 1.0);
  });

  double shift = 0.0;
  for (int k = n - 1; k >= 0; --k) shift += std::log(x + k);
  return {value - shift, err, n};
}

Certified digamma_classical(double x) {
  require_positive(x);
  const int n = shift_count(x);
  const double z = x + n;

  double value = std::log(z) - 0.5 / z;
  const double inv_z2 = 1.0 / (z * z);
  const double err = add_asymptotic_tail(value, [&](std::size_t k) {
    const double two_k = 2.0 * static_cast<double>(k);
    return -kBernoulli[k - 1] / two_k * std::pow(inv_z2, static_cast<double>(k));
  });

  double shift = 0.0;
  for (int k = n - 1; k >= 0; --k) shift += 1.0 / (x + k);
  return {value - shift, err, n};
}

Certified polygamma_classical(DerivOrder d, double x) {
  require_positive(x);
  const int m = d.m();
  if (m == 0) return digamma_classical(x);

  const int n = shift_count(x);
  const double z = x + n;
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;

  // (-1)^{m+1} [ (m-1)!/z^m + m!/(2 z^{m+1}) + sum_k B_2k (2k+m-1)!/((2k)! z^{2k+m}) ]
  double value = sign * (factorial(m - 1) / std::pow(z, m) + factorial(m) / (2.0 * std::pow(z, m + 1)));
  const double err = add_asymptotic_tail(value, [&](std::size_t k) {
    const int two_k = 2 * static_cast<int>(k);
    // (2k+m-1)!/(2k)! as a running product avoids overflow.
    double ratio = 1.0;
    for (int i = two_k + 1; i <= two_k + m - 1; ++i) ratio *= i;
    return sign * kBernoulli[k - 1] * ratio / std::pow(z, two_k + m);
  });

  // psi^{(m)}(x) = psi^{(m)}(x + n) - (-1)^m m! sum_{k<n} (x + k)^{-(m+1)}
  double shift = 0.0;
  for (int k = n - 1; k >= 0; --k) shift += std::pow(x + k, -(m + 1));
  value -= (m % 2 == 0 ? 1.0 : -1.0) * factorial(m) * shift;
  return {value, err, n};
}

}  // namespace qpg
