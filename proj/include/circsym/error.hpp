#pragma once

#include <stdexcept>
#include <string>

namespace circsym {

/// Bad parameter, non-finite angle, out-of-range level and similar caller errors.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptySample : public std::invalid_argument {
 public:
  EmptySample() : std::invalid_argument("sample is empty") {}
};

/// Quadrature did not meet its tolerance; carries the last estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

/// The test statistic is undefined for this sample (e.g. every sine vanishes).
class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An information quantity the computation divides by is zero.
class DegenerateInformation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The base density is outside the class F (the bimodal mixture).
class UnsupportedBase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace circsym
