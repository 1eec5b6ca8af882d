#include "doctest.h"

#include <cmath>
#include <cstdlib>

#include "circsym/error.hpp"
#include "circsym/montecarlo.hpp"

using namespace circsym;

namespace {

ScenarioSpec small_spec() {
  ScenarioSpec s;
  s.name = "unit/small";
  s.family = AlternativeFamily::sine_skewed(BaseDensity::von_mises(1.0), 2);
  s.lambdas = {0.0, 0.3};
  s.n = 50;
  s.replications = 300;
  s.tests = {TestDescriptor::studentized(1), TestDescriptor::studentized(2),
             TestDescriptor::modified_runs(0.6)};
  s.master_seed = 7;
  s.calibration_reps = 500;
  return s;
}

}  // namespace

TEST_CASE("test descriptors") {
  CHECK(TestDescriptor::studentized(2).label() == "phi*_2");
  CHECK(TestDescriptor::modified_runs(0.6).label() == "modrun(p=0.6)");
  for (const auto& d : {TestDescriptor::studentized(3), TestDescriptor::modified_runs(0.6)}) {
    const auto back = TestDescriptor::parse(d.spec());
    CHECK(back.kind == d.kind);
    CHECK(back.spec() == d.spec());
  }
  CHECK_THROWS_AS(TestDescriptor::parse("star:0"), InvalidArgument);
  CHECK_THROWS_AS(TestDescriptor::parse("modrun:1.2"), InvalidArgument);
  CHECK_THROWS_AS(TestDescriptor::parse("ks"), InvalidArgument);
}

TEST_CASE("scenario validation") {
  auto s = small_spec();
  CHECK_NOTHROW(s.validate());
  s.lambdas = {0.2};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = small_spec();
  s.replications = 50;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = small_spec();
  s.n = 5;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = small_spec();
  s.lambdas = {0.0, 1.0};
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = small_spec();
  s.tests.clear();
  CHECK_THROWS_AS(run_scenario(s), InvalidArgument);
}

TEST_CASE("run_scenario output does not depend on the thread count") {
  const auto spec = small_spec();
  const auto one = run_scenario(spec, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = run_scenario(spec, threads);
    for (std::size_t t = 0; t < spec.tests.size(); ++t) {
      for (std::size_t j = 0; j < spec.lambdas.size(); ++j) {
        CHECK(one.cell(t, j).rejections == many.cell(t, j).rejections);
        CHECK(one.cell(t, j).frequency == many.cell(t, j).frequency);
      }
    }
  }
  auto other = spec;
  other.master_seed = 8;
  const auto diff = run_scenario(other, 1);
  bool any = false;
  for (std::size_t t = 0; t < spec.tests.size(); ++t) {
    any = any || diff.cell(t, 1).rejections != one.cell(t, 1).rejections;
  }
  CHECK(any);
}

TEST_CASE("null-only scenario rejects at about alpha") {
  ScenarioSpec s;
  s.name = "unit/null";
  s.family = AlternativeFamily::mixture_shift(10.0);
  s.lambdas = {0.0};
  s.replications = 2000;
  s.tests = {TestDescriptor::studentized(1), TestDescriptor::studentized(3)};
  const auto r = run_scenario(s);
  for (std::size_t t = 0; t < 2; ++t) {
    const auto& c = r.cell(t, 0);
    CHECK(c.standard_error == doctest::Approx(std::sqrt(c.frequency * (1 - c.frequency) / 2000)));
    CHECK(std::abs(c.frequency - 0.05) < 3 * std::sqrt(0.05 * 0.95 / 2000));
    CHECK(c.degenerate == 0);
  }
}

TEST_CASE("presets") {
  CHECK(preset_names().size() == 3);
  const auto t1 = preset("table1", 1000, 1);
  REQUIRE(t1.size() == 4);
  CHECK(t1[0].name == "table1/k1_vm1");
  for (const auto& s : t1) {
    CHECK(s.lambdas == std::vector<double>{0.0, 0.2, 0.4, 0.6});
    CHECK(s.tests.size() == 4);
    CHECK(s.n == 100);
    CHECK_NOTHROW(s.validate());
  }
  CHECK(preset("table2", 1000, 1)[2].family.k == 2);
  const auto t3 = preset("table3", 1000, 1);
  REQUIRE(t3.size() == 6);
  for (const auto& s : t3) CHECK_NOTHROW(s.validate());
  CHECK_THROWS_AS(preset("table4", 1000, 1), InvalidArgument);
}

TEST_CASE("power curves") {
  const auto vm = BaseDensity::von_mises(1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);
  const auto curve = power_curve_analytic(vm, 2, 2, grid, 0.05);
  CHECK(curve.front().power == doctest::Approx(0.05));
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].power >= curve[i - 1].power);
  CHECK(curve.back().power > 0.9);
  const auto k1 = power_curve_analytic(vm, 2, 1, grid, 0.05);
  const auto k3 = power_curve_analytic(vm, 2, 3, grid, 0.05);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(curve[i].power > k1[i].power);
    CHECK(curve[i].power > k3[i].power);
  }

  const auto emp = power_curve_empirical(vm, 2, 2, {0.0}, 0.05, 100, 4000, 3);
  REQUIRE(emp[0].standard_error);
  CHECK(std::abs(emp[0].power - 0.05) < 3 * std::sqrt(0.05 * 0.95 / 4000));
  CHECK_THROWS_AS(power_curve_empirical(vm, 2, 2, {10.0}, 0.05, 100, 100, 3), InvalidArgument);
}

TEST_CASE("default thread count honours the environment") {
  setenv("CIRCSYM_THREADS", "3", 1);
  CHECK(default_threads() == 3);
  unsetenv("CIRCSYM_THREADS");
  CHECK(default_threads() >= 1);
}
