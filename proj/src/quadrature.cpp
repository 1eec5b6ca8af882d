#include "circsym/quadrature.hpp"

#include <cmath>
#include <string>

#include "circsym/angle.hpp"
#include "circsym/error.hpp"

namespace circsym {
namespace {

constexpr int kInitialPanels = 64;

double checked(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw InvalidArgument("integrand is not finite at x = " + std::to_string(x));
  }
  return v;
}

// Sum of f at the midpoints of `panels` equal panels.
double midpoint_sum(const std::function<double(double)>& f, int panels) {
  const double h = kTwoPi / panels;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) {
    s += checked(f, -kPi + (i + 0.5) * h);
  }
  return s;
}

}  // namespace

double integrate_periodic(const std::function<double(double)>& f, const QuadratureSpec& spec) {
  if (!(spec.abs_tolerance > 0.0)) {
    throw InvalidArgument("quadrature tolerance must be positive");
  }
  if (spec.max_refinements < 0) {
    throw InvalidArgument("max_refinements must be non-negative");
  }

  // Trapezoid sums T_n are refined with midpoints; Simpson S_2n = (4 T_2n - T_n) / 3.
  int panels = kInitialPanels / 2;
  double h = kTwoPi / panels;
  double node_sum = 0.5 * (checked(f, -kPi) + checked(f, kPi));
  for (int i = 1; i < panels; ++i) {
    node_sum += checked(f, -kPi + i * h);
  }
  double trap = h * node_sum;

  auto refine = [&] {
    node_sum += midpoint_sum(f, panels);
    panels *= 2;
    h *= 0.5;
    const double next = h * node_sum;
    const double simpson = (4.0 * next - trap) / 3.0;
    trap = next;
    return simpson;
  };

  double estimate = refine();  // 64 panels
  for (int r = 0; r < spec.max_refinements; ++r) {
    const double next = refine();
    if (std::abs(next - estimate) < spec.abs_tolerance) {
      return next;
    }
    estimate = next;
  }
  throw ConvergenceError("periodic quadrature did not reach tolerance " +
                             std::to_string(spec.abs_tolerance) + " after " +
                             std::to_string(spec.max_refinements) + " refinements",
                         estimate);
}

}  // namespace circsym
