#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circsym/distributions.hpp"
#include "circsym/rng.hpp"

namespace circsym {

/// How the alternative at a given lambda is generated.
struct AlternativeFamily {
  enum class Kind { SineSkewed, Moebius, MixtureShift };

  Kind kind = Kind::SineSkewed;
  BaseDensity base = BaseDensity::von_mises(1.0);  // SineSkewed, Moebius
  int k = 1;                                       // SineSkewed: k'
  double r = 0.5;                                  // Moebius
  double kappa = 1.0;                              // MixtureShift

  static AlternativeFamily sine_skewed(BaseDensity base, int k);
  static AlternativeFamily moebius(BaseDensity base, double r);
  static AlternativeFamily mixture_shift(double kappa);

  std::string describe() const;
};

/// One sample of size n at skewness lambda, centred at theta = 0.
Sample draw_alternative(const AlternativeFamily& family, double lambda, std::size_t n,
                        SeededStream& rng);

struct TestDescriptor {
  enum class Kind { Studentized, ModifiedRuns };

  Kind kind = Kind::Studentized;
  int k = 1;       // Studentized
  double p = 0.6;  // ModifiedRuns

  static TestDescriptor studentized(int k) { return {Kind::Studentized, k, 0.0}; }
  static TestDescriptor modified_runs(double p) { return {Kind::ModifiedRuns, 0, p}; }

  /// "phi*_2", "modrun(p=0.6)".
  std::string label() const;
  /// "star:2", "modrun:0.6"; accepted by parse().
  std::string spec() const;
  static TestDescriptor parse(std::string_view text);
};

struct ScenarioSpec {
  std::string name;
  AlternativeFamily family;
  std::vector<double> lambdas{0.0};
  std::size_t n = 100;
  std::size_t replications = 1000;
  double alpha = 0.05;
  std::vector<TestDescriptor> tests;
  std::uint64_t master_seed = 1;
  std::size_t calibration_reps = 10000;

  /// Throws InvalidArgument unless lambdas contains 0, N >= 100, n >= 10,
  /// tests are non-empty and every lambda is admissible for the family.
  void validate() const;
  std::uint64_t scenario_id() const { return scenario_id_from_name(name); }
};

struct TableCell {
  std::size_t rejections = 0;
  std::size_t degenerate = 0;
  double frequency = 0.0;
  double standard_error = 0.0;
};

struct TableResult {
  ScenarioSpec scenario;
  /// cells[test][lambda].
  std::vector<std::vector<TableCell>> cells;

  const TableCell& cell(std::size_t test, std::size_t lambda) const {
    return cells.at(test).at(lambda);
  }
};

/// Number of worker threads used when `threads` is 0: CIRCSYM_THREADS if set,
/// otherwise the hardware concurrency.
unsigned default_threads();

/// Replication r at lambda index j draws from derive_stream(seed, id, r).split(j).
/// Output is independent of `threads`. Validation is skipped when
/// `validate` is false (used for small internal checks).
TableResult run_scenario(const ScenarioSpec& spec, unsigned threads = 0, bool validate = true);

/// Named presets reproducing the three simulation tables: "table1" (1-sine-
/// skewed), "table2" (2-sine-skewed), "table3" (Moebius, mixtures, 3-sine-
/// skewed). Each block has n = 100, alpha = 0.05, tests phi*_1..3 and
/// modrun(0.6). Throws InvalidArgument for unknown names.
std::vector<ScenarioSpec> preset(std::string_view name, std::size_t replications,
                                 std::uint64_t seed);
std::vector<std::string> preset_names();

struct PowerPoint {
  double tau2 = 0.0;
  double power = 0.0;
  std::optional<double> standard_error;
};

std::vector<PowerPoint> power_curve_analytic(const BaseDensity& b, int k, int kprime,
                                             const std::vector<double>& tau2_grid, double alpha);

/// Simulates k'-sine-skewed samples at lambda = tau2 / sqrt(n) and tallies
/// rejections of the two-sided studentized test of order k. Throws
/// InvalidArgument when |tau2 / sqrt(n)| >= 1.
std::vector<PowerPoint> power_curve_empirical(const BaseDensity& b, int k, int kprime,
                                              const std::vector<double>& tau2_grid, double alpha,
                                              std::size_t n, std::size_t replications,
                                              std::uint64_t seed, unsigned threads = 0);

}  // namespace circsym
