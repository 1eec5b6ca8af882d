#pragma once

#include <functional>

namespace circsym {

struct QuadratureSpec {
  double abs_tolerance = 1e-10;
  int max_refinements = 16;
};

/// Composite Simpson over one period [-pi, pi], starting at 64 panels and
/// doubling until two successive estimates differ by less than
/// spec.abs_tolerance. Throws ConvergenceError (with the last estimate) when
/// max_refinements doublings are not enough, InvalidArgument when f is not
/// finite at a node.
double integrate_periodic(const std::function<double(double)>& f,
                          const QuadratureSpec& spec = {});

}  // namespace circsym
