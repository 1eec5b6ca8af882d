#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <stdexcept>

#include "json.hpp"

#include "circsym/angle.hpp"
#include "circsym/asymptotics.hpp"
#include "circsym/montecarlo.hpp"
#include "circsym/symmetry_tests.hpp"

namespace circsym {

/// Version stamped into every CSV and JSON document the tool writes.
inline constexpr int kSchemaVersion = 1;

enum class AngleFormat { Plain, Csv, Grouped };
enum class AngleUnit { Radians, Degrees };

AngleUnit parse_unit(std::string_view text);
AngleFormat parse_format(std::string_view text);

/// Parses "180deg", "3.14rad", "90°" or a bare number (interpreted in
/// `default_unit`).
Angle parse_angle(std::string_view text, AngleUnit default_unit);

struct AngleFileOptions {
  AngleFormat format = AngleFormat::Plain;
  /// Overrides a "# unit:" header when set.
  std::optional<AngleUnit> unit;
  /// csv only: column name or zero-based index; defaults to the first column.
  std::string column;
};

/// Data read from an angle file.
///
/// Plain: one angle per line. Csv: comma-separated, optional header row.
/// Grouped: "angle,count" per line with positive integer counts, expanded in
/// file order. Lines starting with '#' are comments; "# key: value" comments
/// are kept as metadata ("unit", "zero", "sense" are recognised).
struct AngleData {
  Sample sample;
  AngleUnit unit = AngleUnit::Radians;
  std::size_t records = 0;
  std::map<std::string, std::string> metadata;
};

/// Throws DataError on malformed content.
AngleData parse_angles(std::istream& in, const AngleFileOptions& options);
AngleData read_angle_file(const std::string& path, const AngleFileOptions& options);

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario file: "key = value" lines, '#' comments, and optional "[name]"
/// section headers. Keys before the first section are defaults for every
/// section; a file without sections describes one scenario. Keys:
///   name, family (sine-skewed | moebius | mixture-shift), base, k, r, kappa,
///   lambda (comma list), n, reps, alpha, tests (comma list of star:<k> /
///   modrun:<p>), seed, calibration_reps.
std::vector<ScenarioSpec> parse_scenarios(std::istream& in);
std::vector<ScenarioSpec> read_scenario_file(const std::string& path);

/// Wide CSV: per block a "lambda" row then one row per test, one column per
/// lambda; frequencies with four decimals.
void write_tables_csv(std::ostream& out, const std::vector<TableResult>& tables);
nlohmann::json tables_to_json(const std::vector<TableResult>& tables);

nlohmann::json to_json(const TestResult& r);
nlohmann::json to_json(const FisherMatrix& g);
nlohmann::json to_json(const SingularityReport& s);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace circsym
