#include "circsym/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "circsym/asymptotics.hpp"
#include "circsym/distributions.hpp"
#include "circsym/error.hpp"
#include "circsym/io.hpp"
#include "circsym/montecarlo.hpp"
#include "circsym/symmetry_tests.hpp"

namespace circsym {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) {
        throw std::invalid_argument(item);
      }
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": expected a comma-separated list of positive integers, got '" +
                       text + "'");
    }
  }
  if (out.empty()) {
    throw UsageError(std::string(what) + " is empty");
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) {
        throw std::invalid_argument(s);
      }
      return v;
    } catch (const std::exception&) {
      throw UsageError("--grid: cannot parse '" + s + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string a, b, c;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, c, ':');
    const double start = num(a);
    const double stop = num(b);
    const double step = num(c);
    if (!(step > 0.0) || stop < start) {
      throw UsageError("--grid start:stop:step needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) {
      out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(num(item));
  }
  return out;
}

struct Output {
  std::ostream* stream;
  std::unique_ptr<std::ofstream> file;

  explicit Output(std::ostream& fallback, const std::string& path) : stream(&fallback) {
    if (!path.empty() && path != "-") {
      file = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file) {
        throw DataError("cannot write '" + path + "'");
      }
      stream = file.get();
    }
  }
  std::ostream& operator*() { return *stream; }
};

// Without --format the extension decides: .csv, .grouped, anything else plain.
AngleFileOptions file_options(const std::string& file, const std::string& format,
                              const std::string& unit, const std::string& column) {
  AngleFileOptions o;
  if (!format.empty()) {
    o.format = parse_format(format);
  } else {
    const std::string ext = std::filesystem::path(file).extension().string();
    o.format = ext == ".csv" ? AngleFormat::Csv : ext == ".grouped" ? AngleFormat::Grouped : AngleFormat::Plain;
  }
  if (!unit.empty()) {
    o.unit = parse_unit(unit);
  }
  o.column = column;
  return o;
}

AngleUnit effective_unit(const std::string& unit_flag, const AngleData& data) {
  return unit_flag.empty() ? data.unit : parse_unit(unit_flag);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal tests for circular reflective symmetry about a known median direction",
               "circsym"};
  app.require_subcommand(1);

  // test
  std::string file, theta_text, k_text = "1,2,3", alt_text = "two-sided", unit, format, column;
  double alpha = 0.05;
  bool json = false;
  auto* test = app.add_subcommand("test", "Studentized sine tests of symmetry about a known theta");
  test->add_option("file", file, "Angle file")->required();
  test->add_option("--theta", theta_text, "Median direction, e.g. 180deg, 3.14rad");
  test->add_option("--k", k_text, "Comma-separated test orders")->capture_default_str();
  test->add_option("--alt", alt_text, "two-sided, left (lambda<0) or right (lambda>0)")
      ->capture_default_str();
  test->add_option("--alpha", alpha, "Level")->capture_default_str();
  test->add_option("--unit", unit, "Unit of file values and bare angles: radians|degrees");
  test->add_option("--format", format, "plain|csv|grouped (default: by extension)");
  test->add_option("--column", column, "csv column name or index");
  test->add_flag("--json", json, "Emit JSON");

  // uniformity
  std::string direction_text;
  auto* unif = app.add_subcommand("uniformity", "Rayleigh test of uniformity against a fixed direction");
  unif->add_option("file", file, "Angle file")->required();
  unif->add_option("--direction", direction_text, "Central direction of the alternative")->required();
  unif->add_option("--alpha", alpha, "Level")->capture_default_str();
  unif->add_option("--unit", unit, "radians|degrees");
  unif->add_option("--format", format, "plain|csv|grouped (default: by extension)");
  unif->add_option("--column", column, "csv column name or index");
  unif->add_flag("--json", json, "Emit JSON");

  // mc
  std::string preset_name, out_format = "csv", output;
  std::size_t reps = 1000;
  std::size_t calibration_reps = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  auto* mc = app.add_subcommand("mc", "Monte Carlo rejection-frequency tables");
  mc->add_option("--preset", preset_name, "table1, table2, table3 or a scenario file")->required();
  auto* reps_opt = mc->add_option("--reps", reps, "Replications per block")->capture_default_str();
  auto* seed_opt = mc->add_option("--seed", seed, "Master seed")->capture_default_str();
  auto* calib_opt = mc->add_option("--calibration-reps", calibration_reps,
                                   "Sign resamples for the runs test")
                        ->capture_default_str();
  mc->add_option("--threads", threads, "Worker threads (0: CIRCSYM_THREADS or all cores)");
  mc->add_option("--out", out_format, "csv|json")->capture_default_str();
  mc->add_option("--output,-o", output, "Output path (default stdout)");

  // power
  std::string base_text = "vm:1", kprime_text = "1,2,3", grid_text = "0:5:0.25";
  int k = 2;
  std::vector<std::size_t> empirical;
  auto* power = app.add_subcommand("power", "Asymptotic (and simulated) local power curves");
  power->add_option("--base", base_text, "Base density")->capture_default_str();
  power->add_option("--k", k, "Order of the studentized test")->capture_default_str();
  power->add_option("--kprime", kprime_text, "Orders of the local alternatives")->capture_default_str();
  power->add_option("--alpha", alpha, "Level")->capture_default_str();
  power->add_option("--grid", grid_text, "tau2 grid: start:stop:step or a comma list")
      ->capture_default_str();
  power->add_option("--empirical", empirical, "Also simulate with sample size n and N replications")
      ->expected(2);
  power->add_option("--seed", seed, "Master seed for --empirical")->capture_default_str();
  power->add_option("--threads", threads, "Worker threads");
  power->add_option("--output,-o", output, "Output path (default stdout)");

  // fisher
  std::string fisher_k_text = "1";
  auto* fisher = app.add_subcommand("fisher", "Location-skewness information matrix and singularity");
  fisher->add_option("--base", base_text, "Base density")->required();
  fisher->add_option("--k", fisher_k_text, "Comma-separated orders")->capture_default_str();
  fisher->add_flag("--json", json, "Emit JSON");

  // sample
  std::string family = "sine-skewed", lambda_text = "0";
  std::size_t n = 100;
  double r = 0.5, kappa = 1.0;
  int sample_k = 1;
  std::string sample_theta = "0";
  auto* sample = app.add_subcommand("sample", "Draw a synthetic sample");
  sample->add_option("--family", family, "base|sine-skewed|moebius|mixture-shift")->capture_default_str();
  sample->add_option("--base", base_text, "Base density")->capture_default_str();
  sample->add_option("--theta", sample_theta, "Location (sine-skewed)")->capture_default_str();
  sample->add_option("--lambda", lambda_text, "Skewness / shift parameter")->capture_default_str();
  sample->add_option("--k", sample_k, "Sine-skewing frequency")->capture_default_str();
  sample->add_option("--r", r, "Moebius parameter")->capture_default_str();
  sample->add_option("--kappa", kappa, "Mixture concentration")->capture_default_str();
  sample->add_option("-n", n, "Sample size")->capture_default_str();
  sample->add_option("--seed", seed, "Seed")->capture_default_str();
  sample->add_option("--unit", unit, "Output unit: radians|degrees");
  sample->add_option("--output,-o", output, "Output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) {
    reversed.pop_back();  // program name
  }
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "circsym: " << e.what() << "\n";
    auto* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << failed->help();
    return kExitUsage;
  }

  try {
    if (*test) {
      if (theta_text.empty()) {
        throw UsageError(
            "--theta is required: these tests assume a known median direction (set by the "
            "experimental design); testing symmetry about an estimated centre is not supported");
      }
      const AngleData data = read_angle_file(file, file_options(file, format, unit, column));
      const Angle theta = parse_angle(theta_text, effective_unit(unit, data));
      const Alternative alt = parse_alternative(alt_text);
      const auto ks = parse_int_list(k_text, "--k");
      std::vector<TestResult> results;
      for (int kk : ks) {
        results.push_back(symmetry_test(data.sample, theta, kk, alt, alpha));
      }
      if (json) {
        nlohmann::json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["file"] = file;
        doc["n"] = data.sample.size();
        doc["metadata"] = data.metadata;
        doc["results"] = nlohmann::json::array();
        for (const auto& res : results) {
          doc["results"].push_back(to_json(res));
        }
        out << doc.dump(2) << "\n";
      } else {
        out << "file: " << file << "  n = " << data.sample.size() << "  theta = "
            << fixed(theta.degrees(), 4) << " deg  alternative = " << to_string(alt)
            << "  alpha = " << format_double(alpha) << "\n";
        out << "k   statistic      p-value   reject\n";
        for (const auto& res : results) {
          char line[128];
          std::snprintf(line, sizeof line, "%-3d %+.6f   %-10.6g %s\n", *res.k, res.statistic,
                        res.p_value, res.rejected ? "yes" : "no");
          out << line;
        }
      }
      return kExitOk;
    }

    if (*unif) {
      const AngleData data = read_angle_file(file, file_options(file, format, unit, column));
      const Angle direction = parse_angle(direction_text, effective_unit(unit, data));
      const TestResult res = rayleigh_cardioid_test(data.sample, direction, alpha);
      if (json) {
        out << to_json(res).dump(2) << "\n";
      } else {
        out << "file: " << file << "  n = " << res.n << "  direction = "
            << fixed(direction.degrees(), 4) << " deg  alpha = " << format_double(alpha) << "\n";
        char line[160];
        std::snprintf(line, sizeof line, "statistic %.6f   p-value %.6g   reject %s\n",
                      res.statistic, res.p_value, res.rejected ? "yes" : "no");
        out << line;
      }
      return kExitOk;
    }

    if (*mc) {
      std::vector<ScenarioSpec> specs;
      const auto names = preset_names();
      if (std::find(names.begin(), names.end(), preset_name) != names.end()) {
        specs = preset(preset_name, reps, seed);
        for (auto& s : specs) {
          s.calibration_reps = calibration_reps;
        }
      } else if (std::ifstream probe(preset_name); probe) {
        specs = read_scenario_file(preset_name);
        for (auto& s : specs) {
          if (reps_opt->count() > 0) s.replications = reps;
          if (seed_opt->count() > 0) s.master_seed = seed;
          if (calib_opt->count() > 0) s.calibration_reps = calibration_reps;
        }
      } else {
        throw UsageError("unknown preset '" + preset_name +
                         "': expected table1, table2, table3 or a readable scenario file");
      }
      if (out_format != "csv" && out_format != "json") {
        throw UsageError("--out must be csv or json");
      }
      std::vector<TableResult> tables;
      for (const auto& s : specs) {
        tables.push_back(run_scenario(s, threads));
      }
      Output sink(out, output);
      if (out_format == "csv") {
        write_tables_csv(*sink, tables);
      } else {
        *sink << tables_to_json(tables).dump(2) << "\n";
      }
      return kExitOk;
    }

    if (*power) {
      const BaseDensity base = BaseDensity::parse(base_text);
      const auto kprimes = parse_int_list(kprime_text, "--kprime");
      const auto grid = parse_grid(grid_text);
      std::vector<std::vector<PowerPoint>> analytic, simulated;
      for (int kp : kprimes) {
        analytic.push_back(power_curve_analytic(base, k, kp, grid, alpha));
        if (!empirical.empty()) {
          simulated.push_back(power_curve_empirical(base, k, kp, grid, alpha, empirical[0],
                                                    empirical[1], seed, threads));
        }
      }
      Output sink(out, output);
      *sink << "# schema_version," << kSchemaVersion << ",base," << base.name() << ",k," << k
            << ",alpha," << format_double(alpha);
      if (!empirical.empty()) {
        *sink << ",n," << empirical[0] << ",N," << empirical[1] << ",seed," << seed;
      }
      *sink << "\n";
      *sink << "tau2";
      for (int kp : kprimes) *sink << ",analytic_kprime" << kp;
      if (!empirical.empty()) {
        for (int kp : kprimes) *sink << ",empirical_kprime" << kp << ",se_kprime" << kp;
      }
      *sink << "\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        *sink << format_double(grid[i]);
        for (const auto& curve : analytic) *sink << "," << fixed(curve[i].power, 6);
        for (const auto& curve : simulated) {
          *sink << "," << fixed(curve[i].power, 6) << "," << fixed(*curve[i].standard_error, 6);
        }
        *sink << "\n";
      }
      return kExitOk;
    }

    if (*fisher) {
      const BaseDensity base = BaseDensity::parse(base_text);
      const auto ks = parse_int_list(fisher_k_text, "--k");
      nlohmann::json doc;
      doc["schema_version"] = kSchemaVersion;
      doc["base"] = base.name();
      doc["entries"] = nlohmann::json::array();
      for (int kk : ks) {
        const FisherMatrix g = fisher_matrix(base, kk);
        nlohmann::json entry = to_json(g);
        std::optional<SingularityReport> rep;
        if (g.g11 > 0.0) {
          rep = singularity_report(base, kk);
          entry["singularity"] = to_json(*rep);
        } else {
          entry["singularity"] = nullptr;
        }
        doc["entries"].push_back(entry);
        if (!json) {
          char line[256];
          std::snprintf(line, sizeof line,
                        "base %s  k = %d\n  Gamma11 (I_f0) = %.12g\n  Gamma12        = %.12g\n"
                        "  Gamma22        = %.12g\n  determinant    = %.6g\n",
                        base.name().c_str(), kk, g.g11, g.g12, g.g22, g.determinant());
          out << line;
          if (rep) {
            std::snprintf(line, sizeof line, "  normalized gap = %.6g\n  singular       = %s\n",
                          rep->normalized_gap, rep->singular ? "true" : "false");
          } else {
            std::snprintf(line, sizeof line,
                          "  normalized gap = n/a (zero location information)\n  singular       = n/a\n");
          }
          out << line;
        }
      }
      if (json) {
        out << doc.dump(2) << "\n";
      }
      return kExitOk;
    }

    if (*sample) {
      const double lambda = [&] {
        try {
          return std::stod(lambda_text);
        } catch (const std::exception&) {
          throw UsageError("--lambda: cannot parse '" + lambda_text + "'");
        }
      }();
      const AngleUnit out_unit = unit.empty() ? AngleUnit::Radians : parse_unit(unit);
      SeededStream rng(seed);
      std::optional<Sample> drawn;
      std::string description;
      if (family == "base") {
        const BaseDensity base = BaseDensity::parse(base_text);
        drawn = sample_base(base, rng, n);
        description = base.name();
      } else if (family == "sine-skewed") {
        const SineSkewedModel model(BaseDensity::parse(base_text),
                                    parse_angle(sample_theta, AngleUnit::Radians), lambda, sample_k);
        drawn = sample_sine_skewed(model, rng, n);
        description = std::to_string(sample_k) + "-sine-skewed " + model.base.name() +
                      " theta=" + format_double(model.theta.radians()) +
                      " lambda=" + format_double(lambda);
      } else if (family == "moebius") {
        const MoebiusModel model(BaseDensity::parse(base_text), lambda, r);
        drawn = sample_moebius(model, rng, n);
        description = "moebius " + model.base.name() + " r=" + format_double(r) +
                      " shift=" + format_double(lambda);
      } else if (family == "mixture-shift") {
        const SkewedMixtureModel model(kappa, lambda);
        drawn = sample_skewed_mixture(model, rng, n);
        description = "vm-mixture kappa=" + format_double(kappa) + " shift=" + format_double(lambda);
      } else {
        throw UsageError("unknown --family '" + family +
                         "' (expected base, sine-skewed, moebius or mixture-shift)");
      }
      Output sink(out, output);
      *sink << "# unit: " << (out_unit == AngleUnit::Degrees ? "degrees" : "radians") << "\n";
      *sink << "# model: " << description << "\n";
      *sink << "# seed: " << seed << "\n";
      for (double v : drawn->radians()) {
        *sink << format_double(out_unit == AngleUnit::Degrees ? radians_to_degrees(v) : v) << "\n";
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "circsym: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedBase& e) {
    err << "circsym: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "circsym: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const EmptySample& e) {
    err << "circsym: data error: " << e.what() << "\n";
    return kExitData;
  } catch (const DegenerateSample& e) {
    err << "circsym: degenerate sample: " << e.what() << "\n";
    return kExitData;
  } catch (const InvalidArgument& e) {
    err << "circsym: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "circsym: numerical failure: " << e.what() << " (last estimate "
        << format_double(e.last_estimate()) << ")\n";
    return kExitNumerical;
  } catch (const DegenerateInformation& e) {
    err << "circsym: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace circsym
