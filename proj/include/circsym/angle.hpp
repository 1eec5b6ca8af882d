#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace circsym {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces x to the canonical half-open range [-pi, pi).
/// Values already in range are returned unchanged, so wrap is idempotent.
/// Throws InvalidArgument for non-finite input.
double wrap(double x);

inline double degrees_to_radians(double deg) { return deg * (kPi / 180.0); }
inline double radians_to_degrees(double rad) { return rad * (180.0 / kPi); }

/// An angle in radians, always stored in [-pi, pi).
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(wrap(radians)) {}

  static Angle from_degrees(double deg) { return Angle(degrees_to_radians(deg)); }

  double radians() const noexcept { return value_; }
  double degrees() const noexcept { return radians_to_degrees(value_); }

  friend bool operator==(Angle, Angle) = default;

 private:
  double value_ = 0.0;
};

/// A non-empty ordered collection of wrapped angles.
class Sample {
 public:
  /// Wraps every entry. Throws EmptySample when `radians` is empty.
  explicit Sample(std::vector<double> radians);

  std::size_t size() const noexcept { return angles_.size(); }
  std::span<const double> radians() const noexcept { return angles_; }
  double operator[](std::size_t i) const noexcept { return angles_[i]; }

  /// Every angle shifted by `offset` (then wrapped).
  Sample rotated(double offset) const;
  /// Every angle reflected about `axis`: x -> 2*axis - x.
  Sample reflected(Angle axis) const;

 private:
  std::vector<double> angles_;
};

enum class Trig { Sin, Cos };

/// n^-1 * sum_i trig(m (X_i - theta)).
double empirical_trig_moment(const Sample& s, Angle theta, int m, Trig kind);

/// Sum over i of trig(m (X_i - theta)) and of its square, in one pass.
struct TrigSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};
TrigSums trig_sums(std::span<const double> angles, double theta, int m, Trig kind);

}  // namespace circsym
