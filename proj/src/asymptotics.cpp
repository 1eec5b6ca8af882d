#include "circsym/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "circsym/error.hpp"
#include "circsym/special.hpp"

namespace circsym {
namespace {

void require_in_f(const BaseDensity& b) {
  if (!b.in_class_f()) {
    throw UnsupportedBase("base '" + b.name() +
                          "' is not a unimodal symmetric density; information quantities are "
                          "undefined for it");
  }
}

void require_order(int k, const char* what) {
  if (k < 1) {
    throw InvalidArgument(std::string(what) + " must be >= 1");
  }
}

using MemoKey = std::tuple<int, double, int>;

struct FisherMemo {
  std::shared_mutex mutex;
  std::map<MemoKey, FisherMatrix> entries;
};

FisherMemo& memo() {
  static FisherMemo m;
  return m;
}

FisherMatrix compute_fisher(const BaseDensity& b, int k) {
  FisherMatrix out;
  out.k = k;
  out.base = b;
  if (b.family() == Family::Uniform) {
    out.g22 = 0.5;
    return out;
  }
  const double kd = k;
  out.g11 = integrate_periodic([&](double x) {
    const double phi = score_location(b, x);
    return phi * phi * b.pdf(x);
  });
  out.g12 = integrate_periodic(
      [&](double x) { return std::sin(kd * x) * score_location(b, x) * b.pdf(x); });
  out.g22 = integrate_periodic([&](double x) {
    const double s = std::sin(kd * x);
    return s * s * b.pdf(x);
  });
  return out;
}

}  // namespace

double score_location(const BaseDensity& b, double x) {
  const double p = b.parameter();
  switch (b.family()) {
    case Family::VonMises:
      return p * std::sin(x);
    case Family::Cardioid:
      return p * std::sin(x) / (1.0 + p * std::cos(x));
    case Family::WrappedCauchy:
      return 2.0 * p * std::sin(x) / (1.0 + p * p - 2.0 * p * std::cos(x));
    case Family::Uniform:
      return 0.0;
    case Family::VonMisesMixture:
      break;
  }
  require_in_f(b);
  return 0.0;
}

double score_location(const BaseDensity& b, Angle x) { return score_location(b, x.radians()); }

FisherMatrix fisher_matrix(const BaseDensity& b, int k) {
  require_in_f(b);
  require_order(k, "k");
  const MemoKey key{static_cast<int>(b.family()), b.parameter(), k};
  auto& m = memo();
  {
    std::shared_lock lock(m.mutex);
    if (auto it = m.entries.find(key); it != m.entries.end()) {
      return it->second;
    }
  }
  FisherMatrix computed = compute_fisher(b, k);
  std::unique_lock lock(m.mutex);
  return m.entries.try_emplace(key, computed).first->second;
}

double cross_corr(const BaseDensity& b, int k, int kprime) {
  require_in_f(b);
  require_order(k, "k");
  require_order(kprime, "k'");
  if (k == kprime) {
    return fisher_matrix(b, k).g22;
  }
  if (b.family() == Family::Uniform) {
    return 0.0;
  }
  // Symmetric in (k, k'): evaluate with the smaller order first.
  const double lo = std::min(k, kprime);
  const double hi = std::max(k, kprime);
  return integrate_periodic(
      [&](double x) { return std::sin(lo * x) * std::sin(hi * x) * b.pdf(x); });
}

double local_power(const BaseDensity& b, int k, int kprime, double tau2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("level alpha must lie in (0, 1)");
  }
  if (std::isnan(tau2)) {
    throw InvalidArgument("tau2 must not be NaN");
  }
  const FisherMatrix g = fisher_matrix(b, k);
  if (!(g.g22 > 0.0)) {
    throw DegenerateInformation("skewness information Gamma22 is zero");
  }
  const double z = normal_upper_quantile(alpha / 2.0);
  const double c = cross_corr(b, k, kprime);
  if (std::isinf(tau2)) {
    return c == 0.0 ? alpha : 1.0;
  }
  const double shift = c * tau2 / std::sqrt(g.g22);
  return 1.0 - normal_cdf(z - shift) + normal_cdf(-z - shift);
}

SingularityReport singularity_report(const BaseDensity& b, int k) {
  const FisherMatrix g = fisher_matrix(b, k);
  if (!(g.g11 > 0.0)) {
    throw DegenerateInformation("location information I_f0 is zero for base '" + b.name() + "'");
  }
  SingularityReport r;
  r.determinant = g.determinant();
  r.normalized_gap = std::clamp(r.determinant / (g.g11 * g.g22), 0.0, 1.0);
  r.singular = r.normalized_gap < kSingularityThreshold;
  return r;
}

CentralSequence central_sequence(const BaseDensity& b, int k, const Sample& s, Angle theta) {
  require_in_f(b);
  require_order(k, "k");
  CentralSequence out;
  const double kd = k;
  for (double x : s.radians()) {
    const double d = x - theta.radians();
    out.location += score_location(b, d);
    out.skewness += std::sin(kd * d);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(s.size()));
  out.location *= scale;
  out.skewness *= scale;
  return out;
}

double efficient_central_sequence(const BaseDensity& b, int k, const Sample& s, Angle theta) {
  const FisherMatrix g = fisher_matrix(b, k);
  if (!(g.g11 > 0.0)) {
    throw DegenerateInformation("location information I_f0 is zero for base '" + b.name() + "'");
  }
  const double ratio = g.g12 / g.g11;
  const double kd = k;
  double sum = 0.0;
  for (double x : s.radians()) {
    const double d = x - theta.radians();
    sum += std::sin(kd * d) - ratio * score_location(b, d);
  }
  return sum / std::sqrt(static_cast<double>(s.size()));
}

}  // namespace circsym
