#pragma once

#include <stdexcept>
#include <string>

namespace dip {

// Invalid user-supplied configuration: bad bounds, non-physical parameters,
// malformed config files. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical or synthesis failure: degenerate parameter combinations,
// uncontrollable plant, eigenvalue iteration breakdown. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A simulation produced a non-finite state. Carries the blow-up time.
// CLI exit code 4.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(double blow_up_time)
      : std::runtime_error("trajectory diverged at t = " + std::to_string(blow_up_time) + " s"),
        time_(blow_up_time) {}

  DivergenceError(const std::string& message, double blow_up_time)
      : std::runtime_error(message), time_(blow_up_time) {}

  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace dip
