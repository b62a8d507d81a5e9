#pragma once

#include <stdexcept>
#include <string>

namespace odhl {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Negative-order operator applied to a field with a nonzero mean mode.
class MeanModeError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// 1 + rho dropped below the configured floor somewhere on the grid.
class VacuumError : public Error {
 public:
  VacuumError(double min_density, double floor)
      : Error("density " + std::to_string(min_density) + " below floor " +
              std::to_string(floor)),
        min_density_(min_density) {}
  double min_density() const { return min_density_; }

 private:
  double min_density_;
};

class BlowUpError : public Error {
 public:
  explicit BlowUpError(double t)
      : Error("non-finite state at t=" + std::to_string(t)), t_(t) {}
  double time() const { return t_; }

 private:
  double t_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Fit window holds too few samples, or the series is not log-representable.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace odhl
