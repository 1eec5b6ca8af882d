#include "doctest.h"

#include <cmath>
#include <vector>

#include "circsym/asymptotics.hpp"
#include "circsym/distributions.hpp"
#include "circsym/error.hpp"
#include "circsym/symmetry_tests.hpp"

using namespace circsym;

namespace {

double null_size(const BaseDensity& b, int k, std::size_t reps, std::uint64_t seed) {
  SeededStream rng(seed);
  std::size_t rejections = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    const Sample s = sample_base(b, rng, 100);
    rejections += symmetry_test(s, Angle(0.0), k, Alternative::TwoSided, 0.05).rejected;
  }
  return static_cast<double>(rejections) / static_cast<double>(reps);
}

}  // namespace

TEST_CASE("studentized statistic examples") {
  const double theta = -1.3;
  for (int k = 1; k <= 3; ++k) {
    const Sample pair({theta + 0.4, theta - 0.4});
    CHECK(std::abs(studentized_statistic(pair, Angle(theta), k)) < 1e-15);
    const TestResult r = symmetry_test(pair, Angle(theta), k, Alternative::TwoSided, 0.05);
    CHECK(r.p_value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(r.rejected);
    const Sample same(std::vector<double>(25, theta + kPi / (2 * k)));
    CHECK(studentized_statistic(same, Angle(theta), k) == doctest::Approx(5.0).epsilon(1e-12));
  }
}

TEST_CASE("studentized statistic errors") {
  CHECK_THROWS_AS(studentized_statistic(Sample({0.2}), Angle(0.0), 1), InvalidArgument);
  CHECK_THROWS_AS(studentized_statistic(Sample({0.0, 0.0, 0.0}), Angle(0.0), 1), DegenerateSample);
  CHECK_THROWS_AS(studentized_statistic(Sample({0.2, 0.3}), Angle(0.0), 0), InvalidArgument);
  CHECK_THROWS_AS(symmetry_test(Sample({0.2, 0.3}), Angle(0.0), 1, Alternative::TwoSided, 1.5), InvalidArgument);
  CHECK(parse_alternative("two-sided") == Alternative::TwoSided);
  CHECK(parse_alternative("left") == Alternative::Left);
  CHECK(parse_alternative("right") == Alternative::Right);
  CHECK_THROWS_AS(parse_alternative("up"), InvalidArgument);
}

TEST_CASE("one-sided p-values follow the sign of lambda") {
  SeededStream rng(21);
  const SineSkewedModel m(BaseDensity::von_mises(1.0), Angle(0.5), 0.6, 1);
  const Sample s = sample_sine_skewed(m, rng, 200);
  const auto right = symmetry_test(s, Angle(0.5), 1, Alternative::Right, 0.05);
  const auto left = symmetry_test(s, Angle(0.5), 1, Alternative::Left, 0.05);
  const auto two = symmetry_test(s, Angle(0.5), 1, Alternative::TwoSided, 0.05);
  CHECK(right.statistic > 0);
  CHECK(right.p_value + left.p_value == doctest::Approx(1.0));
  CHECK(two.p_value == doctest::Approx(2 * right.p_value));
  CHECK(right.rejected);
}

TEST_CASE("rotation equivariance and reflection antisymmetry") {
  SeededStream rng(22);
  const SineSkewedModel m(BaseDensity::cardioid(0.5), Angle(0.0), 0.3, 2);
  const Sample s = sample_sine_skewed(m, rng, 150);
  const Angle theta(0.2);
  for (int k = 1; k <= 3; ++k) {
    const double q = studentized_statistic(s, theta, k);
    for (double c : {0.5, -2.0, 3.0}) {
      CHECK(studentized_statistic(s.rotated(c), Angle(theta.radians() + c), k) ==
            doctest::Approx(q).epsilon(1e-10));
    }
    CHECK(studentized_statistic(s.reflected(theta), theta, k) == doctest::Approx(-q).epsilon(1e-10));
    CHECK(symmetry_test(s.reflected(theta), theta, k, Alternative::TwoSided, 0.05).p_value ==
          doctest::Approx(symmetry_test(s, theta, k, Alternative::TwoSided, 0.05).p_value).epsilon(1e-10));
  }
}

TEST_CASE("k = 2 statistic is the b2-star statistic") {
  SeededStream rng(23);
  const Sample s = sample_base(BaseDensity::wrapped_cauchy(0.5), rng, 80);
  const double theta = 0.1;
  double sum = 0.0, sum_sq = 0.0;
  for (double x : s.radians()) {
    const double v = std::sin(2 * (x - theta));
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(s.size());
  const double b2_star = std::abs(std::sqrt(n) * (sum / n)) / std::sqrt(sum_sq / n);
  CHECK(std::abs(studentized_statistic(s, Angle(theta), 2)) == doctest::Approx(b2_star).epsilon(1e-12));
}

TEST_CASE("null size of the studentized tests") {
  const std::vector<BaseDensity> bases = {BaseDensity::von_mises(1.0), BaseDensity::von_mises(10.0),
                                          BaseDensity::cardioid(0.5), BaseDensity::wrapped_cauchy(0.5),
                                          BaseDensity::von_mises_mixture(1.0),
                                          BaseDensity::von_mises_mixture(10.0)};
  std::uint64_t seed = 100;
  for (const auto& b : bases) {
    for (int k = 1; k <= 3; ++k) {
      const double size = null_size(b, k, 3000, seed++);
      INFO(b.name() << " k=" << k << " size=" << size);
      CHECK(size >= 0.035);
      CHECK(size <= 0.065);
    }
  }
}

TEST_CASE("studentized and parametric statistics agree under the base") {
  const std::vector<BaseDensity> bases = {BaseDensity::von_mises(1.0), BaseDensity::cardioid(0.5),
                                          BaseDensity::wrapped_cauchy(0.5)};
  SeededStream rng(24);
  for (const auto& b : bases) {
    for (int k = 1; k <= 3; ++k) {
      double total = 0.0;
      for (int r = 0; r < 1000; ++r) {
        const Sample s = sample_base(b, rng, 100);
        total += std::abs(std::abs(studentized_statistic(s, Angle(0.0), k)) -
                          parametric_statistic(s, Angle(0.0), k, b));
      }
      INFO(b.name() << " k=" << k);
      CHECK(total / 1000.0 < 0.05);
    }
  }
}

TEST_CASE("parametric statistic examples") {
  SeededStream rng(25);
  const Sample s = sample_base(BaseDensity::uniform(), rng, 60);
  double sum = 0.0;
  for (double x : s.radians()) sum += std::sin(x - 0.4);
  const double q_unif = std::sqrt(2.0) * sum / std::sqrt(60.0);
  CHECK(parametric_statistic(s, Angle(0.4), 1, BaseDensity::uniform()) ==
        doctest::Approx(std::abs(q_unif)).epsilon(1e-12));
  CHECK(parametric_statistic(Sample({1.0, -1.0}), Angle(0.0), 2, BaseDensity::von_mises(1.0)) < 1e-15);
}

TEST_CASE("Rayleigh cardioid test") {
  const Angle dir(1.0);
  const auto all = rayleigh_cardioid_test(Sample(std::vector<double>(8, 1.0)), dir, 0.05);
  CHECK(all.statistic == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(all.rejected);
  const auto anti = rayleigh_cardioid_test(Sample(std::vector<double>(8, 1.0 + kPi)), dir, 0.05);
  CHECK(anti.statistic == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(anti.p_value > 0.9999);

  // Against direction theta + pi/2 the statistic is the signed uniform-base sine statistic.
  SeededStream rng(26);
  const Sample s = sample_base(BaseDensity::uniform(), rng, 100);
  const double theta = -0.7;
  double sum = 0.0;
  for (double x : s.radians()) sum += std::sin(x - theta);
  const double q_unif = std::sqrt(2.0) * sum / 10.0;
  const double ray = rayleigh_cardioid_test(s, Angle(theta + kPi / 2), 0.05).statistic;
  CHECK(std::abs(ray - q_unif) < 1e-12);
  CHECK(std::abs(std::abs(ray) - parametric_statistic(s, Angle(theta), 1, BaseDensity::uniform())) < 1e-12);

  std::size_t rejections = 0;
  for (int r = 0; r < 2000; ++r) {
    rejections += rayleigh_cardioid_test(sample_base(BaseDensity::uniform(), rng, 100), dir, 0.05).rejected;
  }
  CHECK(std::abs(rejections / 2000.0 - 0.05) <= 0.02);
}

TEST_CASE("modified runs test extremes") {
  SeededStream rng(27);
  // Distances increase with i; signs alternate.
  std::vector<double> alternating, same;
  for (int i = 1; i <= 40; ++i) {
    const double d = 0.05 * i;
    alternating.push_back(i % 2 ? d : -d);
    same.push_back(d);
  }
  const Sample alt(alternating);
  CHECK(modified_runs_count(alt, Angle(0.0), 0.6, rng) == 16);
  const auto hi = modified_runs_test(alt, Angle(0.0), 0.6, 0.05, 5000, rng);
  CHECK(hi.p_value > 0.99);
  CHECK_FALSE(hi.rejected);
  CHECK(hi.metadata.at("tail_size") == "16");

  const Sample one_sided(same);
  CHECK(modified_runs_count(one_sided, Angle(0.0), 0.6, rng) == 1);
  const auto lo = modified_runs_test(one_sided, Angle(0.0), 0.6, 0.05, 5000, rng);
  CHECK(lo.p_value <= 2.0 / 5001.0);
  CHECK(lo.rejected);

  CHECK_THROWS_AS(modified_runs_test(Sample({0.1, 0.2}), Angle(0.0), 0.6, 0.05, 100, rng), InvalidArgument);
  CHECK_THROWS_AS(modified_runs_test(alt, Angle(0.0), 1.0, 0.05, 100, rng), InvalidArgument);
  CHECK_THROWS_AS(modified_runs_test(alt, Angle(0.0), 0.6, 0.05, 0, rng), InvalidArgument);
}

TEST_CASE("modified runs test is invariant to rotation of sample and centre") {
  SeededStream a(28), b(28), data(29);
  const Sample s = sample_base(BaseDensity::von_mises(1.0), data, 50);
  const auto r1 = modified_runs_test(s, Angle(0.0), 0.6, 0.05, 1000, a);
  const auto r2 = modified_runs_test(s.rotated(1.5), Angle(1.5), 0.6, 0.05, 1000, b);
  CHECK(r1.statistic == r2.statistic);
  CHECK(r1.p_value == r2.p_value);
}

TEST_CASE("modified runs test null size") {
  SeededStream rng(30);
  std::size_t rejections = 0;
  const int reps = 1500;
  for (int r = 0; r < reps; ++r) {
    const Sample s = sample_base(BaseDensity::von_mises(1.0), rng, 100);
    rejections += modified_runs_test(s, Angle(0.0), 0.6, 0.05, 2000, rng).rejected;
  }
  CHECK(std::abs(rejections / static_cast<double>(reps) - 0.0577) <= 0.02);
}
