#include "circsym/special.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "circsym/error.hpp"

namespace circsym {

double bessel_i_scaled(int m, double x) {
  if (m < 0) {
    throw InvalidArgument("Bessel order must be non-negative");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw InvalidArgument("Bessel argument must be finite and non-negative");
  }
  if (x == 0.0) {
    return m == 0 ? 1.0 : 0.0;
  }
  // t_0 = e^-x (x/2)^m / m!,  t_{j+1} = t_j (x/2)^2 / ((j+1)(j+m+1)).
  const double half = 0.5 * x;
  double term = std::exp(m * std::log(half) - std::lgamma(m + 1.0) - x);
  const double q = half * half;
  double sum = term;
  for (int j = 0; j < 100000; ++j) {
    term *= q / ((j + 1.0) * (j + m + 1.0));
    sum += term;
    // Terms decrease monotonically once j exceeds roughly x/2.
    if (term < 1e-14 * sum && (j + 1.0) > half) {
      break;
    }
  }
  return sum;
}

double bessel_i(int m, double x) {
  return std::exp(x) * bessel_i_scaled(m, x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_upper_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("quantile level must lie in (0, 1)");
  }
  // 1 - Phi(z) = erfc(z / sqrt2) / 2.
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace circsym
