#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circsym/asymptotics.hpp"
#include "circsym/distributions.hpp"
#include "circsym/error.hpp"
#include "circsym/io.hpp"
#include "circsym/montecarlo.hpp"
#include "circsym/symmetry_tests.hpp"

namespace py = pybind11;
using namespace circsym;

namespace {

Sample to_sample(const std::vector<double>& angles) { return Sample(angles); }

std::vector<double> to_list(const Sample& s) { return {s.radians().begin(), s.radians().end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tests of circular reflective symmetry about a known centre";

  py::register_exception<DegenerateSample>(m, "DegenerateSample", PyExc_ValueError);
  py::register_exception<EmptySample>(m, "EmptySample", PyExc_ValueError);
  py::register_exception<DegenerateInformation>(m, "DegenerateInformation", PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  m.def("wrap", &wrap, py::arg("x"));

  py::class_<BaseDensity>(m, "BaseDensity")
      .def_static("parse", &BaseDensity::parse, py::arg("spec"))
      .def_static("von_mises", &BaseDensity::von_mises, py::arg("kappa"))
      .def_static("cardioid", &BaseDensity::cardioid, py::arg("ell"))
      .def_static("wrapped_cauchy", &BaseDensity::wrapped_cauchy, py::arg("rho"))
      .def_static("uniform", &BaseDensity::uniform)
      .def_property_readonly("name", &BaseDensity::name)
      .def_property_readonly("parameter", &BaseDensity::parameter)
      .def("pdf", &BaseDensity::pdf, py::arg("x"))
      .def("__repr__", [](const BaseDensity& b) { return "BaseDensity('" + b.name() + "')"; });

  py::class_<FisherMatrix>(m, "FisherMatrix")
      .def_readonly("g11", &FisherMatrix::g11)
      .def_readonly("g12", &FisherMatrix::g12)
      .def_readonly("g22", &FisherMatrix::g22)
      .def_readonly("k", &FisherMatrix::k)
      .def_property_readonly("determinant", &FisherMatrix::determinant);

  py::class_<SingularityReport>(m, "SingularityReport")
      .def_readonly("determinant", &SingularityReport::determinant)
      .def_readonly("normalized_gap", &SingularityReport::normalized_gap)
      .def_readonly("singular", &SingularityReport::singular);

  py::class_<TestResult>(m, "TestResult")
      .def_readonly("statistic", &TestResult::statistic)
      .def_readonly("p_value", &TestResult::p_value)
      .def_readonly("method", &TestResult::method)
      .def_readonly("n", &TestResult::n)
      .def_readonly("k", &TestResult::k)
      .def_readonly("rejected", &TestResult::rejected)
      .def_readonly("metadata", &TestResult::metadata)
      .def_property_readonly("alternative", [](const TestResult& r) { return to_string(r.alternative); })
      .def_property_readonly("theta", [](const TestResult& r) { return r.theta.radians(); })
      .def("__repr__", [](const TestResult& r) { return to_json(r).dump(); });

  m.def("fisher_matrix", &fisher_matrix, py::arg("base"), py::arg("k"));
  m.def("singularity_report", &singularity_report, py::arg("base"), py::arg("k"));
  m.def("cross_corr", &cross_corr, py::arg("base"), py::arg("k"), py::arg("kprime"));
  m.def("local_power", &local_power, py::arg("base"), py::arg("k"), py::arg("kprime"), py::arg("tau2"),
        py::arg("alpha") = 0.05);
  m.def("score_location", py::overload_cast<const BaseDensity&, double>(&score_location), py::arg("base"),
        py::arg("x"));
  m.def(
      "efficient_central_sequence",
      [](const BaseDensity& b, int k, const std::vector<double>& angles, double theta) {
        return efficient_central_sequence(b, k, to_sample(angles), Angle(theta));
      },
      py::arg("base"), py::arg("k"), py::arg("angles"), py::arg("theta"));

  m.def(
      "symmetry_test",
      [](const std::vector<double>& angles, double theta, int k, const std::string& alternative,
         double alpha) {
        return symmetry_test(to_sample(angles), Angle(theta), k, parse_alternative(alternative), alpha);
      },
      py::arg("angles"), py::arg("theta"), py::arg("k") = 1, py::arg("alternative") = "two-sided",
      py::arg("alpha") = 0.05);
  m.def(
      "parametric_statistic",
      [](const std::vector<double>& angles, double theta, int k, const BaseDensity& b) {
        return parametric_statistic(to_sample(angles), Angle(theta), k, b);
      },
      py::arg("angles"), py::arg("theta"), py::arg("k"), py::arg("base"));
  m.def(
      "rayleigh_cardioid_test",
      [](const std::vector<double>& angles, double direction, double alpha) {
        return rayleigh_cardioid_test(to_sample(angles), Angle(direction), alpha);
      },
      py::arg("angles"), py::arg("direction"), py::arg("alpha") = 0.05);
  m.def(
      "modified_runs_test",
      [](const std::vector<double>& angles, double theta, double p, double alpha,
         std::size_t calibration_reps, std::uint64_t seed) {
        SeededStream rng(seed);
        return modified_runs_test(to_sample(angles), Angle(theta), p, alpha, calibration_reps, rng);
      },
      py::arg("angles"), py::arg("theta"), py::arg("p") = 0.6, py::arg("alpha") = 0.05,
      py::arg("calibration_reps") = 10000, py::arg("seed") = 1);

  m.def(
      "sample_sine_skewed",
      [](const BaseDensity& b, double theta, double lambda, int k, std::size_t n, std::uint64_t seed) {
        SeededStream rng(seed);
        return to_list(sample_sine_skewed(SineSkewedModel(b, Angle(theta), lambda, k), rng, n));
      },
      py::arg("base"), py::arg("theta"), py::arg("lambda_"), py::arg("k"), py::arg("n"), py::arg("seed"));
  m.def(
      "sample_moebius",
      [](const BaseDensity& b, double shift, double r, std::size_t n, std::uint64_t seed) {
        SeededStream rng(seed);
        return to_list(sample_moebius(MoebiusModel(b, shift, r), rng, n));
      },
      py::arg("base"), py::arg("shift"), py::arg("r"), py::arg("n"), py::arg("seed"));
  m.def(
      "sample_skewed_mixture",
      [](double kappa, double shift, std::size_t n, std::uint64_t seed) {
        SeededStream rng(seed);
        return to_list(sample_skewed_mixture(SkewedMixtureModel(kappa, shift), rng, n));
      },
      py::arg("kappa"), py::arg("shift"), py::arg("n"), py::arg("seed"));

  m.def(
      "run_preset_json",
      [](const std::string& name, std::size_t reps, std::uint64_t seed, unsigned threads) {
        std::vector<TableResult> tables;
        {
          py::gil_scoped_release release;
          for (const auto& spec : preset(name, reps, seed)) tables.push_back(run_scenario(spec, threads));
        }
        return tables_to_json(tables).dump();
      },
      py::arg("name"), py::arg("reps") = 1000, py::arg("seed") = 1, py::arg("threads") = 0);
  m.def(
      "power_curve",
      [](const BaseDensity& b, int k, int kprime, const std::vector<double>& grid, double alpha,
         std::size_t n, std::size_t reps, std::uint64_t seed) {
        std::vector<PowerPoint> pts;
        {
          py::gil_scoped_release release;
          pts = n == 0 ? power_curve_analytic(b, k, kprime, grid, alpha)
                       : power_curve_empirical(b, k, kprime, grid, alpha, n, reps, seed);
        }
        std::vector<std::pair<double, double>> out;
        for (const auto& p : pts) out.emplace_back(p.tau2, p.power);
        return out;
      },
      py::arg("base"), py::arg("k"), py::arg("kprime"), py::arg("grid"), py::arg("alpha") = 0.05,
      py::arg("n") = 0, py::arg("reps") = 0, py::arg("seed") = 1);
}
