#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "circsym/angle.hpp"
#include "circsym/rng.hpp"

namespace circsym {

enum class Family { VonMises, Cardioid, WrappedCauchy, Uniform, VonMisesMixture };

/// A reflectively symmetric circular density centred at 0.
///
/// VonMises(kappa), Cardioid(l), WrappedCauchy(rho) and Uniform are the
/// unimodal members used throughout. VonMisesMixture(kappa) is the equal
/// mixture of von Mises laws at -pi/4 and pi/4; it is symmetric but bimodal,
/// so it is only admitted as a simulation scenario (in_class_f() is false
/// and the information-matrix routines reject it).
class BaseDensity {
 public:
  static BaseDensity von_mises(double kappa);
  static BaseDensity cardioid(double ell);
  static BaseDensity wrapped_cauchy(double rho);
  static BaseDensity uniform();
  static BaseDensity von_mises_mixture(double kappa);

  /// Parses "vm:1", "cardioid:0.5" (or "ca:0.5"), "wc:0.5", "uniform",
  /// "vm-mixture:10". Throws InvalidArgument on anything else.
  static BaseDensity parse(std::string_view spec);

  Family family() const noexcept { return family_; }
  /// kappa, l or rho; 0 for Uniform.
  double parameter() const noexcept { return parameter_; }
  bool in_class_f() const noexcept { return family_ != Family::VonMisesMixture; }

  /// Canonical spec string, accepted by parse().
  std::string name() const;

  /// Density at x (any real; the density is 2*pi periodic).
  double pdf(double x) const;
  /// d pdf / dx at x, closed form. Throws UnsupportedBase for the mixture.
  double pdf_derivative(double x) const;
  /// One draw in [-pi, pi).
  double draw(SeededStream& rng) const;

  friend bool operator==(const BaseDensity& a, const BaseDensity& b) {
    return a.family_ == b.family_ && a.parameter_ == b.parameter_;
  }

 private:
  BaseDensity(Family family, double parameter);

  Family family_;
  double parameter_;
  // 1 / (2 pi e^-kappa I0(kappa)) for the von Mises based families.
  double vm_norm_ = 0.0;
};

double pdf_base(const BaseDensity& b, Angle x);
Sample sample_base(const BaseDensity& b, SeededStream& rng, std::size_t n);

/// x -> f0(x - theta) (1 + lambda sin(k (x - theta))).
struct SineSkewedModel {
  BaseDensity base;
  Angle theta;
  double lambda = 0.0;
  int k = 1;

  SineSkewedModel(BaseDensity base, Angle theta, double lambda, int k);

  double pdf(double x) const;
  /// Reflect-with-probability construction: Y from base, output theta + Y
  /// when U <= (1 + lambda sin(kY)) / 2, theta - Y otherwise.
  double draw(SeededStream& rng) const;
};

double pdf_sine_skewed(const SineSkewedModel& m, Angle x);
Sample sample_sine_skewed(const SineSkewedModel& m, SeededStream& rng, std::size_t n);

/// Base draw X mapped through x -> shift + 2 atan(omega tan((x - shift) / 2)),
/// omega = (1 - r) / (1 + r).
struct MoebiusModel {
  BaseDensity base;
  double shift = 0.0;
  double r = 0.5;

  MoebiusModel(BaseDensity base, double shift, double r);

  double omega() const noexcept { return (1.0 - r) / (1.0 + r); }
  double transform(double x) const;
  double pdf(double y) const;
  double draw(SeededStream& rng) const;
};

Sample sample_moebius(const MoebiusModel& m, SeededStream& rng, std::size_t n);

/// Equal mixture of VM(kappa) at -pi/4 and at pi/4 + shift.
struct SkewedMixtureModel {
  double kappa = 1.0;
  double shift = 0.0;

  SkewedMixtureModel(double kappa, double shift);

  double pdf(double x) const;
  double draw(SeededStream& rng) const;
};

Sample sample_skewed_mixture(const SkewedMixtureModel& m, SeededStream& rng, std::size_t n);

/// Best-Fisher rejection draw from VM(kappa) centred at 0.
double draw_von_mises(double kappa, SeededStream& rng);

}  // namespace circsym
