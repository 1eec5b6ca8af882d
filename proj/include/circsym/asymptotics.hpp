#pragma once

#include "circsym/angle.hpp"
#include "circsym/distributions.hpp"
#include "circsym/quadrature.hpp"

namespace circsym {

/// Location score phi(x) = -f0'(x) / f0(x), closed form per family.
/// Throws UnsupportedBase for the von Mises mixture.
double score_location(const BaseDensity& b, Angle x);
double score_location(const BaseDensity& b, double x);

/// Location-skewness information at symmetry for the k-sine-skewed model:
///   g11 = int phi^2 f0,  g12 = int sin(kx) phi f0,  g22 = int sin^2(kx) f0.
struct FisherMatrix {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;
  int k = 1;
  BaseDensity base = BaseDensity::uniform();

  double determinant() const noexcept { return g11 * g22 - g12 * g12; }
};

/// Computed by quadrature and memoised per (base, k); safe to call from
/// several threads.
FisherMatrix fisher_matrix(const BaseDensity& b, int k);

/// C(k, k') = int sin(kx) sin(k'x) f0(x) dx.
double cross_corr(const BaseDensity& b, int k, int kprime);

/// Asymptotic power of the two-sided studentized level-alpha test of order k
/// against local k'-sine-skewed alternatives with lambda = tau2 / sqrt(n).
double local_power(const BaseDensity& b, int k, int kprime, double tau2, double alpha);

struct SingularityReport {
  double determinant = 0.0;
  /// det / (g11 g22), in [0, 1].
  double normalized_gap = 0.0;
  bool singular = false;
};

inline constexpr double kSingularityThreshold = 1e-8;

/// Throws DegenerateInformation when g11 = 0 (uniform base).
SingularityReport singularity_report(const BaseDensity& b, int k);

struct CentralSequence {
  double location = 0.0;  // n^-1/2 sum phi(X_i - theta)
  double skewness = 0.0;  // n^-1/2 sum sin(k (X_i - theta))
};

CentralSequence central_sequence(const BaseDensity& b, int k, const Sample& s, Angle theta);

/// n^-1/2 sum [sin(k(X_i - theta)) - (g12 / g11) phi(X_i - theta)].
double efficient_central_sequence(const BaseDensity& b, int k, const Sample& s, Angle theta);

}  // namespace circsym
