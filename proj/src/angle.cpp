#include "circsym/angle.hpp"

#include <cmath>
#include <string>

#include "circsym/error.hpp"

namespace circsym {

double wrap(double x) {
  if (!std::isfinite(x)) {
    throw InvalidArgument("angle must be finite, got " + std::to_string(x));
  }
  if (x >= -kPi && x < kPi) {
    return x;
  }
  double r = std::fmod(x + kPi, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  double out = r - kPi;
  // fmod + shift can round onto the excluded endpoint.
  if (out >= kPi) {
    out = -kPi;
  }
  return out;
}

Sample::Sample(std::vector<double> radians) : angles_(std::move(radians)) {
  if (angles_.empty()) {
    throw EmptySample();
  }
  for (double& a : angles_) {
    a = wrap(a);
  }
}

Sample Sample::rotated(double offset) const {
  std::vector<double> out(angles_);
  for (double& a : out) {
    a += offset;
  }
  return Sample(std::move(out));
}

Sample Sample::reflected(Angle axis) const {
  std::vector<double> out(angles_);
  for (double& a : out) {
    a = 2.0 * axis.radians() - a;
  }
  return Sample(std::move(out));
}

TrigSums trig_sums(std::span<const double> angles, double theta, int m, Trig kind) {
  TrigSums s;
  const double md = static_cast<double>(m);
  for (double x : angles) {
    const double arg = md * (x - theta);
    const double v = kind == Trig::Sin ? std::sin(arg) : std::cos(arg);
    s.sum += v;
    s.sum_sq += v * v;
  }
  return s;
}

double empirical_trig_moment(const Sample& s, Angle theta, int m, Trig kind) {
  if (m < 1) {
    throw InvalidArgument("trigonometric moment order must be >= 1");
  }
  const TrigSums sums = trig_sums(s.radians(), theta.radians(), m, kind);
  return sums.sum / static_cast<double>(s.size());
}

}  // namespace circsym
