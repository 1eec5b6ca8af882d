#include "circsym/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "circsym/error.hpp"

namespace circsym {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    if (i > start) {
      out.push_back(s.substr(start, i - start));
    }
  }
  return out;
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

double to_radians(double v, AngleUnit unit) {
  return unit == AngleUnit::Degrees ? degrees_to_radians(v) : v;
}

[[noreturn]] void data_error(std::size_t line, const std::string& message) {
  throw DataError("line " + std::to_string(line) + ": " + message);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

AngleUnit parse_unit(std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "rad" || t == "radian" || t == "radians") {
    return AngleUnit::Radians;
  }
  if (t == "deg" || t == "degree" || t == "degrees") {
    return AngleUnit::Degrees;
  }
  throw InvalidArgument("unknown angle unit '" + std::string(text) + "' (expected radians or degrees)");
}

AngleFormat parse_format(std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "plain") {
    return AngleFormat::Plain;
  }
  if (t == "csv") {
    return AngleFormat::Csv;
  }
  if (t == "grouped") {
    return AngleFormat::Grouped;
  }
  throw InvalidArgument("unknown angle file format '" + std::string(text) +
                        "' (expected plain, csv or grouped)");
}

Angle parse_angle(std::string_view text, AngleUnit default_unit) {
  std::string_view t = trim(text);
  AngleUnit unit = default_unit;
  auto strip = [&](std::string_view suffix, AngleUnit u) {
    if (t.size() > suffix.size() && t.substr(t.size() - suffix.size()) == suffix) {
      t = trim(t.substr(0, t.size() - suffix.size()));
      unit = u;
      return true;
    }
    return false;
  };
  strip("deg", AngleUnit::Degrees) || strip("\xC2\xB0", AngleUnit::Degrees) ||
      strip("rad", AngleUnit::Radians);
  const auto v = to_number(t);
  if (!v || !std::isfinite(*v)) {
    throw InvalidArgument("cannot parse angle '" + std::string(text) + "'");
  }
  return Angle(to_radians(*v, unit));
}

AngleData parse_angles(std::istream& in, const AngleFileOptions& options) {
  std::map<std::string, std::string> metadata;
  std::vector<double> raw;
  std::size_t records = 0;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> csv_column;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) {
      continue;
    }
    if (text.front() == '#') {
      text = trim(text.substr(1));
      if (const auto colon = text.find(':'); colon != std::string_view::npos) {
        metadata[lower(trim(text.substr(0, colon)))] = std::string(trim(text.substr(colon + 1)));
      }
      continue;
    }

    switch (options.format) {
      case AngleFormat::Plain: {
        const auto v = to_number(text);
        if (!v || !std::isfinite(*v)) {
          data_error(line_no, "not a number: '" + std::string(text) + "'");
        }
        raw.push_back(*v);
        ++records;
        break;
      }
      case AngleFormat::Csv: {
        const auto fields = split(text, ',');
        if (!csv_column) {
          // First data-bearing line: decide whether it is a header.
          const bool header = std::any_of(fields.begin(), fields.end(),
                                          [](std::string_view f) { return !to_number(f); });
          if (options.column.empty()) {
            csv_column = 0;
          } else if (const auto idx = to_number(options.column);
                     idx && *idx >= 0 && *idx == std::floor(*idx)) {
            csv_column = static_cast<std::size_t>(*idx);
          } else {
            if (!header) {
              data_error(line_no, "column '" + options.column + "' requested but the file has no header");
            }
            const auto it = std::find(fields.begin(), fields.end(), options.column);
            if (it == fields.end()) {
              data_error(line_no, "no column named '" + options.column + "'");
            }
            csv_column = static_cast<std::size_t>(it - fields.begin());
          }
          if (header) {
            continue;
          }
        }
        if (*csv_column >= fields.size()) {
          data_error(line_no, "missing column " + std::to_string(*csv_column));
        }
        const auto v = to_number(fields[*csv_column]);
        if (!v || !std::isfinite(*v)) {
          data_error(line_no, "not a number: '" + std::string(fields[*csv_column]) + "'");
        }
        raw.push_back(*v);
        ++records;
        break;
      }
      case AngleFormat::Grouped: {
        const auto fields = text.find(',') != std::string_view::npos ? split(text, ',')
                                                                    : split_whitespace(text);
        if (fields.size() != 2) {
          data_error(line_no, "grouped format expects 'angle,count'");
        }
        const auto angle = to_number(fields[0]);
        const auto count = to_number(fields[1]);
        if (!angle || !std::isfinite(*angle)) {
          data_error(line_no, "not an angle: '" + std::string(fields[0]) + "'");
        }
        if (!count || *count < 1 || *count != std::floor(*count) || *count > 1e9) {
          data_error(line_no, "count must be a positive integer, got '" + std::string(fields[1]) + "'");
        }
        raw.insert(raw.end(), static_cast<std::size_t>(*count), *angle);
        ++records;
        break;
      }
    }
  }

  if (raw.empty()) {
    throw DataError("no observations found");
  }
  AngleUnit unit = AngleUnit::Radians;
  if (options.unit) {
    unit = *options.unit;
  } else if (auto it = metadata.find("unit"); it != metadata.end()) {
    unit = parse_unit(it->second);
  }
  for (double& v : raw) {
    v = to_radians(v, unit);
  }
  return AngleData{Sample(std::move(raw)), unit, records, std::move(metadata)};
}

AngleData read_angle_file(const std::string& path, const AngleFileOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  try {
    return parse_angles(in, options);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<ScenarioSpec> parse_scenarios(std::istream& in) {
  using Section = std::vector<std::pair<std::string, std::string>>;
  Section defaults;
  std::vector<std::pair<std::string, Section>> sections;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = trim(text.substr(0, hash));
    }
    if (text.empty()) {
      continue;
    }
    if (text.front() == '[') {
      if (text.back() != ']') {
        data_error(line_no, "unterminated section header");
      }
      sections.emplace_back(std::string(trim(text.substr(1, text.size() - 2))), Section{});
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      data_error(line_no, "expected 'key = value'");
    }
    auto entry = std::make_pair(lower(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1))));
    (sections.empty() ? defaults : sections.back().second).push_back(std::move(entry));
  }
  if (sections.empty()) {
    sections.emplace_back("", Section{});
  }

  std::vector<ScenarioSpec> out;
  for (const auto& [section_name, entries] : sections) {
    std::map<std::string, std::string> kv;
    for (const auto& [k, v] : defaults) {
      kv[k] = v;
    }
    for (const auto& [k, v] : entries) {
      kv[k] = v;
    }
    auto get = [&](const std::string& key) -> std::optional<std::string> {
      if (auto it = kv.find(key); it != kv.end()) {
        return it->second;
      }
      return std::nullopt;
    };
    auto number = [&](const std::string& key, double fallback) {
      const auto v = get(key);
      if (!v) {
        return fallback;
      }
      const auto d = to_number(*v);
      if (!d) {
        throw DataError("scenario key '" + key + "': not a number: '" + *v + "'");
      }
      return *d;
    };
    auto count = [&](const std::string& key, std::size_t fallback) {
      const double d = number(key, static_cast<double>(fallback));
      if (d < 0 || d != std::floor(d)) {
        throw DataError("scenario key '" + key + "' must be a non-negative integer");
      }
      return static_cast<std::size_t>(d);
    };

    static const std::vector<std::string> known = {"name", "family", "base", "k", "r", "kappa",
                                                   "lambda", "n", "reps", "alpha", "tests",
                                                   "seed", "calibration_reps"};
    for (const auto& [k, v] : kv) {
      if (std::find(known.begin(), known.end(), k) == known.end()) {
        throw DataError("unknown scenario key '" + k + "'");
      }
    }

    ScenarioSpec s;
    s.name = section_name.empty() ? get("name").value_or("custom") : section_name;
    const std::string family = lower(get("family").value_or("sine-skewed"));
    try {
      if (family == "sine-skewed" || family == "sine_skewed") {
        s.family = AlternativeFamily::sine_skewed(BaseDensity::parse(get("base").value_or("vm:1")),
                                                  static_cast<int>(number("k", 1)));
      } else if (family == "moebius") {
        s.family = AlternativeFamily::moebius(BaseDensity::parse(get("base").value_or("vm:1")),
                                              number("r", 0.5));
      } else if (family == "mixture-shift" || family == "mixture_shift") {
        s.family = AlternativeFamily::mixture_shift(number("kappa", 1.0));
      } else {
        throw DataError("unknown family '" + family + "'");
      }
    } catch (const InvalidArgument& e) {
      throw DataError(std::string("scenario '") + s.name + "': " + e.what());
    }
    if (const auto grid = get("lambda")) {
      s.lambdas.clear();
      for (auto item : split(*grid, ',')) {
        const auto v = to_number(item);
        if (!v) {
          throw DataError("lambda grid: not a number: '" + std::string(item) + "'");
        }
        s.lambdas.push_back(*v);
      }
    }
    s.n = count("n", 100);
    s.replications = count("reps", 1000);
    s.alpha = number("alpha", 0.05);
    s.master_seed = static_cast<std::uint64_t>(count("seed", 1));
    s.calibration_reps = count("calibration_reps", 10000);
    const std::string tests = get("tests").value_or("star:1, star:2, star:3, modrun:0.6");
    for (auto item : split(tests, ',')) {
      s.tests.push_back(TestDescriptor::parse(item));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ScenarioSpec> read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  return parse_scenarios(in);
}

void write_tables_csv(std::ostream& out, const std::vector<TableResult>& tables) {
  std::size_t width = 0;
  for (const auto& t : tables) {
    width = std::max(width, t.scenario.lambdas.size());
  }
  out << "# schema_version," << kSchemaVersion << "\n";
  out << "block,test";
  for (std::size_t j = 0; j < width; ++j) {
    out << ",col" << (j + 1);
  }
  out << "\n";
  char buf[32];
  for (const auto& t : tables) {
    out << t.scenario.name << ",lambda";
    for (double l : t.scenario.lambdas) {
      out << "," << format_double(l);
    }
    out << "\n";
    for (std::size_t i = 0; i < t.scenario.tests.size(); ++i) {
      out << t.scenario.name << "," << t.scenario.tests[i].label();
      for (const auto& c : t.cells[i]) {
        std::snprintf(buf, sizeof buf, "%.4f", c.frequency);
        out << "," << buf;
      }
      out << "\n";
    }
  }
}

nlohmann::json tables_to_json(const std::vector<TableResult>& tables) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "rejection-tables";
  doc["blocks"] = nlohmann::json::array();
  for (const auto& t : tables) {
    const ScenarioSpec& s = t.scenario;
    nlohmann::json block;
    block["name"] = s.name;
    block["alternative"] = s.family.describe();
    block["lambda"] = s.lambdas;
    block["n"] = s.n;
    block["replications"] = s.replications;
    block["alpha"] = s.alpha;
    block["master_seed"] = s.master_seed;
    block["scenario_id"] = s.scenario_id();
    block["calibration_reps"] = s.calibration_reps;
    block["tests"] = nlohmann::json::array();
    for (std::size_t i = 0; i < s.tests.size(); ++i) {
      nlohmann::json row;
      row["test"] = s.tests[i].label();
      row["spec"] = s.tests[i].spec();
      for (const auto& c : t.cells[i]) {
        row["rejections"].push_back(c.rejections);
        row["frequency"].push_back(c.frequency);
        row["standard_error"].push_back(c.standard_error);
        row["degenerate_samples"].push_back(c.degenerate);
      }
      block["tests"].push_back(std::move(row));
    }
    doc["blocks"].push_back(std::move(block));
  }
  return doc;
}

nlohmann::json to_json(const TestResult& r) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = r.method;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["alternative"] = to_string(r.alternative);
  j["n"] = r.n;
  j["theta_rad"] = r.theta.radians();
  j["theta_deg"] = r.theta.degrees();
  j["k"] = r.k ? nlohmann::json(*r.k) : nlohmann::json(nullptr);
  j["level"] = r.level ? nlohmann::json(*r.level) : nlohmann::json(nullptr);
  j["rejected"] = r.rejected;
  if (!r.metadata.empty()) {
    j["metadata"] = r.metadata;
  }
  return j;
}

nlohmann::json to_json(const FisherMatrix& g) {
  nlohmann::json j;
  j["base"] = g.base.name();
  j["k"] = g.k;
  j["g11"] = g.g11;
  j["g12"] = g.g12;
  j["g22"] = g.g22;
  j["determinant"] = g.determinant();
  return j;
}

nlohmann::json to_json(const SingularityReport& s) {
  nlohmann::json j;
  j["determinant"] = s.determinant;
  j["normalized_gap"] = s.normalized_gap;
  j["singular"] = s.singular;
  return j;
}

}  // namespace circsym
