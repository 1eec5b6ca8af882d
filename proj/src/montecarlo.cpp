#include "circsym/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <mutex>
#include <thread>

#include "circsym/asymptotics.hpp"
#include "circsym/error.hpp"
#include "circsym/symmetry_tests.hpp"

namespace circsym {
namespace {

constexpr std::uint64_t kCalibrationLane = 0x6361'6c69'6272'0000ULL;  // "calibr"

std::string number(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

double parse_double(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

AlternativeFamily AlternativeFamily::sine_skewed(BaseDensity base, int k) {
  if (k < 1) {
    throw InvalidArgument("sine-skewing frequency must be >= 1");
  }
  AlternativeFamily f;
  f.kind = Kind::SineSkewed;
  f.base = base;
  f.k = k;
  return f;
}

AlternativeFamily AlternativeFamily::moebius(BaseDensity base, double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw InvalidArgument("Moebius parameter r must lie in (0, 1)");
  }
  AlternativeFamily f;
  f.kind = Kind::Moebius;
  f.base = base;
  f.r = r;
  return f;
}

AlternativeFamily AlternativeFamily::mixture_shift(double kappa) {
  AlternativeFamily f;
  f.kind = Kind::MixtureShift;
  f.base = BaseDensity::von_mises_mixture(kappa);
  f.kappa = kappa;
  return f;
}

std::string AlternativeFamily::describe() const {
  switch (kind) {
    case Kind::SineSkewed:
      return std::to_string(k) + "-sine-skewed " + base.name();
    case Kind::Moebius:
      return "Moebius(r=" + number(r) + ") " + base.name();
    case Kind::MixtureShift:
      return "shifted vm-mixture:" + number(kappa);
  }
  return "?";
}

Sample draw_alternative(const AlternativeFamily& family, double lambda, std::size_t n,
                        SeededStream& rng) {
  switch (family.kind) {
    case AlternativeFamily::Kind::SineSkewed:
      return sample_sine_skewed(SineSkewedModel(family.base, Angle(0.0), lambda, family.k), rng, n);
    case AlternativeFamily::Kind::Moebius:
      return sample_moebius(MoebiusModel(family.base, lambda, family.r), rng, n);
    case AlternativeFamily::Kind::MixtureShift:
      return sample_skewed_mixture(SkewedMixtureModel(family.kappa, lambda), rng, n);
  }
  throw InvalidArgument("unknown alternative family");
}

std::string TestDescriptor::label() const {
  if (kind == Kind::Studentized) {
    return "phi*_" + std::to_string(k);
  }
  return "modrun(p=" + number(p) + ")";
}

std::string TestDescriptor::spec() const {
  if (kind == Kind::Studentized) {
    return "star:" + std::to_string(k);
  }
  return "modrun:" + number(p);
}

TestDescriptor TestDescriptor::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "star" || head == "studentized") {
    const double k = parse_double(arg);
    if (k < 1 || k != std::floor(k)) {
      throw InvalidArgument("studentized test order must be a positive integer: '" +
                            std::string(text) + "'");
    }
    return studentized(static_cast<int>(k));
  }
  if (head == "modrun") {
    const double p = arg.empty() ? 0.6 : parse_double(arg);
    if (!(p > 0.0 && p < 1.0)) {
      throw InvalidArgument("runs-test percentile must lie in (0, 1)");
    }
    return modified_runs(p);
  }
  throw InvalidArgument("unknown test descriptor '" + std::string(text) +
                        "' (expected star:<k> or modrun:<p>)");
}

void ScenarioSpec::validate() const {
  if (name.empty()) {
    throw InvalidArgument("scenario needs a name");
  }
  if (std::find(lambdas.begin(), lambdas.end(), 0.0) == lambdas.end()) {
    throw InvalidArgument("scenario '" + name + "': lambda grid must include 0 (null column)");
  }
  if (replications < 100) {
    throw InvalidArgument("scenario '" + name + "': replication count must be >= 100");
  }
  if (n < 10) {
    throw InvalidArgument("scenario '" + name + "': sample size must be >= 10");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("scenario '" + name + "': alpha must lie in (0, 1)");
  }
  if (tests.empty()) {
    throw InvalidArgument("scenario '" + name + "': no tests listed");
  }
  if (calibration_reps < 1) {
    throw InvalidArgument("scenario '" + name + "': calibration_reps must be positive");
  }
  for (double l : lambdas) {
    if (!std::isfinite(l)) {
      throw InvalidArgument("scenario '" + name + "': lambda must be finite");
    }
    if (family.kind == AlternativeFamily::Kind::SineSkewed && !(l > -1.0 && l < 1.0)) {
      throw InvalidArgument("scenario '" + name + "': sine-skewed lambda must lie in (-1, 1)");
    }
  }
}

unsigned default_threads() {
  if (const char* env = std::getenv("CIRCSYM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

TableResult run_scenario(const ScenarioSpec& spec, unsigned threads, bool validate) {
  if (validate) {
    spec.validate();
  }
  const std::size_t tests = spec.tests.size();
  const std::size_t lambdas = spec.lambdas.size();
  const std::size_t cells = tests * lambdas;
  const std::uint64_t id = spec.scenario_id();

  struct Tally {
    std::vector<std::size_t> rejections;
    std::vector<std::size_t> degenerate;
  };

  auto work = [&](std::size_t r, Tally& tally) {
    const SeededStream replication = derive_stream(spec.master_seed, id, r);
    for (std::size_t j = 0; j < lambdas; ++j) {
      SeededStream rng = replication.split(j);
      const Sample sample = draw_alternative(spec.family, spec.lambdas[j], spec.n, rng);
      for (std::size_t t = 0; t < tests; ++t) {
        const TestDescriptor& test = spec.tests[t];
        bool rejected = false;
        try {
          if (test.kind == TestDescriptor::Kind::Studentized) {
            rejected = symmetry_test(sample, Angle(0.0), test.k, Alternative::TwoSided, spec.alpha)
                           .rejected;
          } else {
            SeededStream calibration = rng.split(kCalibrationLane + t);
            rejected = modified_runs_test(sample, Angle(0.0), test.p, spec.alpha,
                                          spec.calibration_reps, calibration)
                           .rejected;
          }
        } catch (const DegenerateSample&) {
          ++tally.degenerate[t * lambdas + j];
        }
        tally.rejections[t * lambdas + j] += rejected ? 1 : 0;
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(threads == 0 ? default_threads() : threads, spec.replications));
  std::vector<Tally> tallies(std::max(1u, workers),
                             Tally{std::vector<std::size_t>(cells), std::vector<std::size_t>(cells)});
  std::atomic<std::size_t> next{0};
  auto worker = [&](Tally& tally) {
    for (;;) {
      const std::size_t r = next.fetch_add(1, std::memory_order_relaxed);
      if (r >= spec.replications) {
        return;
      }
      work(r, tally);
    }
  };

  if (workers <= 1) {
    worker(tallies[0]);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          worker(tallies[w]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          next.store(spec.replications);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    if (failure) {
      std::rethrow_exception(failure);
    }
  }

  TableResult result;
  result.scenario = spec;
  result.cells.assign(tests, std::vector<TableCell>(lambdas));
  const double total = static_cast<double>(spec.replications);
  for (std::size_t t = 0; t < tests; ++t) {
    for (std::size_t j = 0; j < lambdas; ++j) {
      TableCell& c = result.cells[t][j];
      for (const Tally& tally : tallies) {
        c.rejections += tally.rejections[t * lambdas + j];
        c.degenerate += tally.degenerate[t * lambdas + j];
      }
      c.frequency = static_cast<double>(c.rejections) / total;
      c.standard_error = std::sqrt(c.frequency * (1.0 - c.frequency) / total);
    }
  }
  return result;
}

std::vector<std::string> preset_names() { return {"table1", "table2", "table3"}; }

std::vector<ScenarioSpec> preset(std::string_view name, std::size_t replications,
                                 std::uint64_t seed) {
  const std::vector<TestDescriptor> tests = {
      TestDescriptor::studentized(1), TestDescriptor::studentized(2),
      TestDescriptor::studentized(3), TestDescriptor::modified_runs(0.6)};
  const std::vector<double> standard_grid = {0.0, 0.2, 0.4, 0.6};

  auto block = [&](std::string block_name, AlternativeFamily family, std::vector<double> grid) {
    ScenarioSpec s;
    s.name = std::string(name) + "/" + block_name;
    s.family = family;
    s.lambdas = std::move(grid);
    s.n = 100;
    s.replications = replications;
    s.alpha = 0.05;
    s.tests = tests;
    s.master_seed = seed;
    return s;
  };
  const auto vm1 = BaseDensity::von_mises(1.0);
  const auto vm10 = BaseDensity::von_mises(10.0);
  const auto ca = BaseDensity::cardioid(0.5);
  const auto wc = BaseDensity::wrapped_cauchy(0.5);

  std::vector<ScenarioSpec> out;
  if (name == "table1" || name == "table2") {
    const int k = name == "table1" ? 1 : 2;
    const std::string prefix = "k" + std::to_string(k) + "_";
    out.push_back(block(prefix + "vm1", AlternativeFamily::sine_skewed(vm1, k), standard_grid));
    out.push_back(block(prefix + "vm10", AlternativeFamily::sine_skewed(vm10, k), standard_grid));
    out.push_back(block(prefix + "ca0.5", AlternativeFamily::sine_skewed(ca, k), standard_grid));
    out.push_back(block(prefix + "wc0.5", AlternativeFamily::sine_skewed(wc, k), standard_grid));
  } else if (name == "table3") {
    out.push_back(block("moebius_vm1", AlternativeFamily::moebius(vm1, 0.5),
                        {0.0, 0.2 / 3.0, 0.4 / 3.0, 0.2}));
    out.push_back(block("moebius_vm10", AlternativeFamily::moebius(vm10, 0.5),
                        {0.0, 0.02, 0.04, 0.06}));
    out.push_back(block("mixture_vm1", AlternativeFamily::mixture_shift(1.0),
                        {0.0, 0.4, 0.8, 1.2}));
    out.push_back(block("mixture_vm10", AlternativeFamily::mixture_shift(10.0), standard_grid));
    out.push_back(block("k3_vm1", AlternativeFamily::sine_skewed(vm1, 3), standard_grid));
    out.push_back(block("k3_vm10", AlternativeFamily::sine_skewed(vm10, 3), standard_grid));
  } else {
    throw InvalidArgument("unknown preset '" + std::string(name) +
                          "' (expected table1, table2 or table3)");
  }
  return out;
}

std::vector<PowerPoint> power_curve_analytic(const BaseDensity& b, int k, int kprime,
                                             const std::vector<double>& tau2_grid, double alpha) {
  std::vector<PowerPoint> out;
  out.reserve(tau2_grid.size());
  for (double tau : tau2_grid) {
    out.push_back({tau, local_power(b, k, kprime, tau, alpha), std::nullopt});
  }
  return out;
}

std::vector<PowerPoint> power_curve_empirical(const BaseDensity& b, int k, int kprime,
                                              const std::vector<double>& tau2_grid, double alpha,
                                              std::size_t n, std::size_t replications,
                                              std::uint64_t seed, unsigned threads) {
  if (tau2_grid.empty()) {
    return {};
  }
  ScenarioSpec spec;
  spec.name = "power/" + b.name() + "/k=" + std::to_string(k) + "/k'=" + std::to_string(kprime) +
              "/n=" + std::to_string(n);
  spec.family = AlternativeFamily::sine_skewed(b, kprime);
  spec.n = n;
  spec.replications = replications;
  spec.alpha = alpha;
  spec.tests = {TestDescriptor::studentized(k)};
  spec.master_seed = seed;
  spec.lambdas.clear();
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double tau : tau2_grid) {
    const double lambda = tau / root_n;
    if (!(std::abs(lambda) < 1.0)) {
      throw InvalidArgument("tau2 = " + number(tau) + " gives |lambda| = |tau2/sqrt(n)| >= 1");
    }
    spec.lambdas.push_back(lambda);
  }
  if (n < 2 || replications < 1 || !(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("empirical power curve needs n >= 2, replications >= 1, alpha in (0,1)");
  }
  const TableResult table = run_scenario(spec, threads, /*validate=*/false);
  std::vector<PowerPoint> out;
  for (std::size_t j = 0; j < tau2_grid.size(); ++j) {
    const TableCell& c = table.cell(0, j);
    out.push_back({tau2_grid[j], c.frequency, c.standard_error});
  }
  return out;
}

}  // namespace circsym
