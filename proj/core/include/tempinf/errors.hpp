#pragma once

#include <stdexcept>
#include <string>

namespace tempinf {

// Error hierarchy. The CLI maps each class onto a distinct exit code.

/// Malformed or inconsistent input data (files, networks, score vectors).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical kernel failed: non-convergence or resolvent divergence.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A parameter is out of its admissible range.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tempinf
