#include "circsym/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <string>

#include "circsym/error.hpp"
#include "circsym/special.hpp"

namespace circsym {
namespace {

constexpr double kMaxKappa = 500.0;
constexpr double kQuarterPi = kPi / 4.0;

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw InvalidArgument(message);
  }
}

void require_kappa(double kappa) {
  require(std::isfinite(kappa) && kappa > 0.0 && kappa <= kMaxKappa,
          "von Mises concentration must lie in (0, 500]");
}

std::string format_parameter(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_number(std::string_view text, std::string_view context) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("cannot parse number '" + std::string(text) + "' in '" +
                          std::string(context) + "'");
  }
  return v;
}

double uniform_angle(SeededStream& rng) { return kTwoPi * rng.uniform() - kPi; }

double draw_cardioid(double ell, SeededStream& rng) {
  // Invert F(x) = (x + pi + l sin x) / (2 pi): solve x + l sin x = target.
  const double target = kTwoPi * rng.uniform() - kPi;
  double lo = -kPi;
  double hi = kPi;
  double x = target;
  for (int it = 0; it < 100; ++it) {
    const double g = x + ell * std::sin(x) - target;
    if (g > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double step = g / (1.0 + ell * std::cos(x));
    double next = x - step;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) < 1e-15) {
      x = next;
      break;
    }
    x = next;
  }
  return wrap(x);
}

double draw_wrapped_cauchy(double rho, SeededStream& rng) {
  const double scale = -std::log(rho);
  return wrap(scale * std::tan(kPi * (rng.uniform() - 0.5)));
}

double vm_kernel(double x, double kappa, double norm) {
  return norm * std::exp(kappa * (std::cos(x) - 1.0));
}

double vm_norm(double kappa) { return 1.0 / (kTwoPi * bessel_i_scaled(0, kappa)); }

}  // namespace

double draw_von_mises(double kappa, SeededStream& rng) {
  // Best & Fisher (1979).
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double z = std::cos(kPi * rng.uniform());
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = rng.uniform();
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double angle = std::acos(std::clamp(f, -1.0, 1.0));
      return wrap(rng.uniform() < 0.5 ? -angle : angle);
    }
  }
}

BaseDensity::BaseDensity(Family family, double parameter) : family_(family), parameter_(parameter) {
  if (family == Family::VonMises || family == Family::VonMisesMixture) {
    vm_norm_ = vm_norm(parameter);
  }
}

BaseDensity BaseDensity::von_mises(double kappa) {
  require_kappa(kappa);
  return BaseDensity(Family::VonMises, kappa);
}

BaseDensity BaseDensity::cardioid(double ell) {
  require(std::isfinite(ell) && ell > 0.0 && ell < 1.0, "cardioid parameter must lie in (0, 1)");
  return BaseDensity(Family::Cardioid, ell);
}

BaseDensity BaseDensity::wrapped_cauchy(double rho) {
  require(std::isfinite(rho) && rho > 0.0 && rho < 1.0,
          "wrapped Cauchy parameter must lie in (0, 1)");
  return BaseDensity(Family::WrappedCauchy, rho);
}

BaseDensity BaseDensity::uniform() { return BaseDensity(Family::Uniform, 0.0); }

BaseDensity BaseDensity::von_mises_mixture(double kappa) {
  require_kappa(kappa);
  return BaseDensity(Family::VonMisesMixture, kappa);
}

BaseDensity BaseDensity::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  if (colon == std::string_view::npos) {
    if (head == "uniform" || head == "unif") {
      return uniform();
    }
    throw InvalidArgument("base density '" + std::string(spec) +
                          "' needs a parameter (e.g. vm:1, cardioid:0.5, wc:0.5)");
  }
  const double value = parse_number(spec.substr(colon + 1), spec);
  if (head == "vm" || head == "vonmises") {
    return von_mises(value);
  }
  if (head == "cardioid" || head == "ca") {
    return cardioid(value);
  }
  if (head == "wc" || head == "wrappedcauchy") {
    return wrapped_cauchy(value);
  }
  if (head == "vm-mixture" || head == "mixture") {
    return von_mises_mixture(value);
  }
  throw InvalidArgument("unknown base density family '" + std::string(head) + "'");
}

std::string BaseDensity::name() const {
  switch (family_) {
    case Family::VonMises:
      return "vm:" + format_parameter(parameter_);
    case Family::Cardioid:
      return "cardioid:" + format_parameter(parameter_);
    case Family::WrappedCauchy:
      return "wc:" + format_parameter(parameter_);
    case Family::Uniform:
      return "uniform";
    case Family::VonMisesMixture:
      return "vm-mixture:" + format_parameter(parameter_);
  }
  return "?";
}

double BaseDensity::pdf(double x) const {
  switch (family_) {
    case Family::VonMises:
      return vm_kernel(x, parameter_, vm_norm_);
    case Family::Cardioid:
      return (1.0 + parameter_ * std::cos(x)) / kTwoPi;
    case Family::WrappedCauchy: {
      const double rho = parameter_;
      return (1.0 - rho * rho) / kTwoPi / (1.0 + rho * rho - 2.0 * rho * std::cos(x));
    }
    case Family::Uniform:
      return 1.0 / kTwoPi;
    case Family::VonMisesMixture:
      return 0.5 * (vm_kernel(x + kQuarterPi, parameter_, vm_norm_) +
                    vm_kernel(x - kQuarterPi, parameter_, vm_norm_));
  }
  return 0.0;
}

double BaseDensity::pdf_derivative(double x) const {
  switch (family_) {
    case Family::VonMises:
      return -parameter_ * std::sin(x) * pdf(x);
    case Family::Cardioid:
      return -parameter_ * std::sin(x) / kTwoPi;
    case Family::WrappedCauchy: {
      const double rho = parameter_;
      const double d = 1.0 + rho * rho - 2.0 * rho * std::cos(x);
      return -(1.0 - rho * rho) / kTwoPi * 2.0 * rho * std::sin(x) / (d * d);
    }
    case Family::Uniform:
      return 0.0;
    case Family::VonMisesMixture:
      break;
  }
  throw UnsupportedBase("the von Mises mixture is outside the symmetric unimodal class");
}

double BaseDensity::draw(SeededStream& rng) const {
  switch (family_) {
    case Family::VonMises:
      return draw_von_mises(parameter_, rng);
    case Family::Cardioid:
      return draw_cardioid(parameter_, rng);
    case Family::WrappedCauchy:
      return draw_wrapped_cauchy(parameter_, rng);
    case Family::Uniform:
      return uniform_angle(rng);
    case Family::VonMisesMixture: {
      const double centre = rng.uniform() < 0.5 ? -kQuarterPi : kQuarterPi;
      return wrap(centre + draw_von_mises(parameter_, rng));
    }
  }
  return 0.0;
}

double pdf_base(const BaseDensity& b, Angle x) { return b.pdf(x.radians()); }

namespace {

template <typename Draw>
Sample fill(std::size_t n, Draw&& draw) {
  if (n == 0) {
    throw InvalidArgument("sample size must be at least 1");
  }
  std::vector<double> out(n);
  for (double& v : out) {
    v = draw();
  }
  return Sample(std::move(out));
}

}  // namespace

Sample sample_base(const BaseDensity& b, SeededStream& rng, std::size_t n) {
  return fill(n, [&] { return b.draw(rng); });
}

SineSkewedModel::SineSkewedModel(BaseDensity base_, Angle theta_, double lambda_, int k_)
    : base(base_), theta(theta_), lambda(lambda_), k(k_) {
  require(std::isfinite(lambda) && lambda > -1.0 && lambda < 1.0,
          "skewness parameter lambda must lie in (-1, 1)");
  require(k >= 1, "sine-skewing frequency k must be >= 1");
}

double SineSkewedModel::pdf(double x) const {
  const double d = x - theta.radians();
  return base.pdf(d) * (1.0 + lambda * std::sin(k * d));
}

double SineSkewedModel::draw(SeededStream& rng) const {
  const double y = base.draw(rng);
  const double accept = 0.5 * (1.0 + lambda * std::sin(k * y));
  return wrap(rng.uniform() <= accept ? theta.radians() + y : theta.radians() - y);
}

double pdf_sine_skewed(const SineSkewedModel& m, Angle x) { return m.pdf(x.radians()); }

Sample sample_sine_skewed(const SineSkewedModel& m, SeededStream& rng, std::size_t n) {
  return fill(n, [&] { return m.draw(rng); });
}

MoebiusModel::MoebiusModel(BaseDensity base_, double shift_, double r_)
    : base(base_), shift(shift_), r(r_) {
  require(std::isfinite(shift), "Moebius shift must be finite");
  require(std::isfinite(r) && r > 0.0 && r < 1.0, "Moebius parameter r must lie in (0, 1)");
}

// shift + 2 atan(omega tan(v)) written with atan2 so the map stays continuous
// through v = +-pi/2.
double MoebiusModel::transform(double x) const {
  const double v = 0.5 * (x - shift);
  return wrap(shift + 2.0 * std::atan2(omega() * std::sin(v), std::cos(v)));
}

double MoebiusModel::pdf(double y) const {
  const double w = omega();
  const double u = 0.5 * (y - shift);
  const double x = shift + 2.0 * std::atan2(std::sin(u), w * std::cos(u));
  const double c = std::cos(u);
  const double s = std::sin(u);
  return base.pdf(x) * w / (w * w * c * c + s * s);
}

double MoebiusModel::draw(SeededStream& rng) const { return transform(base.draw(rng)); }

Sample sample_moebius(const MoebiusModel& m, SeededStream& rng, std::size_t n) {
  return fill(n, [&] { return m.draw(rng); });
}

SkewedMixtureModel::SkewedMixtureModel(double kappa_, double shift_) : kappa(kappa_), shift(shift_) {
  require_kappa(kappa);
  require(std::isfinite(shift), "mixture shift must be finite");
}

double SkewedMixtureModel::pdf(double x) const {
  const double norm = vm_norm(kappa);
  return 0.5 * (vm_kernel(x + kQuarterPi, kappa, norm) +
                vm_kernel(x - kQuarterPi - shift, kappa, norm));
}

double SkewedMixtureModel::draw(SeededStream& rng) const {
  const double centre = rng.uniform() < 0.5 ? -kQuarterPi : kQuarterPi + shift;
  return wrap(centre + draw_von_mises(kappa, rng));
}

Sample sample_skewed_mixture(const SkewedMixtureModel& m, SeededStream& rng, std::size_t n) {
  return fill(n, [&] { return m.draw(rng); });
}

}  // namespace circsym
