#pragma once

#include <stdexcept>
#include <string>

namespace ttfem {

// Error taxonomy mirrors the CLI exit codes: config errors (2), numerical
// failures such as singular solves or stagnation (3), and violations of the
// assumptions behind the trajectory linearisation (4).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Tangential exits, vertex passages, recirculation: the trajectory machinery
// refuses to continue rather than perturb its way around them.
struct AssumptionError : std::runtime_error {
  explicit AssumptionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ttfem
