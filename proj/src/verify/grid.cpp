#include <cmath>
#include <string>

#include "qpg/verify.hpp"

namespace qpg::verify {

void GridSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min > 0.0) || !(x_min < x_max)) {
    throw Error(Errc::DomainError, "grid needs 0 < x_min < x_max");
  }
  if (n_points < 2) throw Error(Errc::DomainError, "grid needs at least two points");
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> xs(static_cast<std::size_t>(n_points));
  const double last = n_points - 1;
  if (spacing == Spacing::Linear) {
    for (int i = 0; i < n_points; ++i) xs[i] = x_min + (x_max - x_min) * (i / last);
  } else {
    const double lo = std::log(x_min);
    const double hi = std::log(x_max);
    for (int i = 0; i < n_points; ++i) xs[i] = std::exp(lo + (hi - lo) * (i / last));
  }
  xs.front() = x_min;
  xs.back() = x_max;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw Error(Errc::DomainError, "grid spacing collapses below double resolution");
    }
  }
  return xs;
}

CMOrder::CMOrder(int k_max) : k_max_(k_max) {
  if (k_max < 0) throw Error(Errc::DomainError, "k_max must be nonnegative");
  if (k_max > kMax) {
    throw Error(Errc::OrderTooLarge, "k_max " + std::to_string(k_max) + " exceeds 4");
  }
}

std::vector<double> spot_points() {
  return GridSpec{0.5, 8.0, 10, Spacing::Logarithmic}.points();
}

}  // namespace qpg::verify
