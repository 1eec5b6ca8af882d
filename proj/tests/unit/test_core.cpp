#include "doctest.h"

#include <cmath>
#include <vector>

#include "circsym/angle.hpp"
#include "circsym/error.hpp"
#include "circsym/quadrature.hpp"
#include "circsym/rng.hpp"
#include "circsym/special.hpp"

using namespace circsym;

TEST_CASE("wrap examples") {
  CHECK(wrap(0.0) == 0.0);
  CHECK(wrap(3.0 * kPi) == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(wrap(-kPi / 4 + kTwoPi) == doctest::Approx(-kPi / 4).epsilon(1e-14));
  CHECK(wrap(kPi) == -kPi);
  CHECK(wrap(-kPi) == -kPi);
  CHECK_THROWS_AS(wrap(NAN), InvalidArgument);
  CHECK_THROWS_AS(wrap(INFINITY), InvalidArgument);
}

TEST_CASE("wrap is idempotent and 2pi periodic") {
  SeededStream rng(11);
  for (int i = 0; i < 100000; ++i) {
    const double x = (rng.uniform() - 0.5) * 2000.0;
    const double w = wrap(x);
    REQUIRE(w >= -kPi);
    REQUIRE(w < kPi);
    REQUIRE(wrap(w) == w);
    // Periodicity up to the rounding of x + 2pi.
    const double d = std::abs(wrap(x + kTwoPi) - w);
    REQUIRE(std::min(d, kTwoPi - d) < 1e-11);
  }
}

TEST_CASE("Angle and Sample") {
  CHECK(Angle::from_degrees(180).radians() == -kPi);
  CHECK(Angle(kTwoPi + 1.0).radians() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Sample({}), EmptySample);
  const Sample s({0.5, 4.0, -7.0});
  for (double v : s.radians()) {
    CHECK(v >= -kPi);
    CHECK(v < kPi);
  }
  const Sample r = s.reflected(Angle(0.3));
  CHECK(r[0] == doctest::Approx(0.1));
}

TEST_CASE("empirical trig moments") {
  const double theta = 0.7;
  const double a = 0.4;
  CHECK(std::abs(empirical_trig_moment(Sample({theta + a, theta - a}), Angle(theta), 1, Trig::Sin)) <
        1e-15);
  CHECK(empirical_trig_moment(Sample(std::vector<double>(9, theta + kPi / 2)), Angle(theta), 1,
                              Trig::Sin) == doctest::Approx(1.0));
  CHECK(std::abs(empirical_trig_moment(Sample({0, kPi / 2, kPi, -kPi / 2}), Angle(0.0), 2,
                                       Trig::Cos)) < 1e-15);
}

TEST_CASE("sine moment negates under reflection about theta") {
  SeededStream rng(5);
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(6.0 * rng.uniform());
  const Sample s(xs);
  const Angle theta(1.1);
  for (int m = 1; m <= 4; ++m) {
    const double a = empirical_trig_moment(s, theta, m, Trig::Sin);
    const double b = empirical_trig_moment(s.reflected(theta), theta, m, Trig::Sin);
    CHECK(b == doctest::Approx(-a).epsilon(1e-12));
  }
}

TEST_CASE("integrate_periodic examples") {
  CHECK(integrate_periodic([](double) { return 1.0 / kTwoPi; }) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_periodic([](double x) { return std::sin(x) * std::sin(x) / kTwoPi; }) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // Oracle: 2^20-point trapezoid sum.
  const double i0 = 1.2660658777520082;
  const double vm = integrate_periodic([&](double x) { return std::exp(std::cos(x)) / (kTwoPi * i0); });
  CHECK(std::abs(vm - 1.0) < 1e-10);
}

TEST_CASE("integrate_periodic failures") {
  CHECK_THROWS_AS(integrate_periodic([](double) { return NAN; }), InvalidArgument);
  QuadratureSpec tight;
  tight.abs_tolerance = 1e-300;
  tight.max_refinements = 1;
  try {
    integrate_periodic([](double x) { return std::exp(10 * std::cos(x)); }, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.last_estimate()));
  }
}

TEST_CASE("Bessel I_m against the standard library") {
  for (int m = 0; m <= 6; ++m) {
    for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
      const double ref = std::cyl_bessel_i(static_cast<double>(m), x);
      CHECK(bessel_i(m, x) == doctest::Approx(ref).epsilon(1e-12));
      CHECK(bessel_i_scaled(m, x) == doctest::Approx(ref * std::exp(-x)).epsilon(1e-12));
    }
  }
  CHECK(std::isfinite(bessel_i_scaled(0, 500.0)));
  CHECK(bessel_i_scaled(0, 500.0) == doctest::Approx(1.0 / std::sqrt(kTwoPi * 500.0)).epsilon(1e-3));
}

TEST_CASE("Bessel I_m against quadrature") {
  for (int m = 0; m <= 4; ++m) {
    const double q = integrate_periodic([&](double x) { return std::cos(m * x) * std::exp(2.5 * std::cos(x)); }) / kTwoPi;
    CHECK(bessel_i(m, 2.5) == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(normal_upper_quantile(0.025) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  for (double p : {1e-10, 0.001, 0.1, 0.3, 0.5, 0.77, 0.999}) {
    CHECK(1.0 - normal_cdf(normal_upper_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
}
