#pragma once

#include <stdexcept>
#include <string>

namespace fgbeam {

/// Factorization / conditioning failures; carries a condition-number report.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Singular reduced system: an unconstrained rigid mode survived the
/// boundary conditions. The message names the offending mode.
class RigidModeError : public NumericError {
  public:
    RigidModeError(const std::string& msg, int dof) : NumericError(msg), dof_(dof) {}
    int dof() const { return dof_; }

  private:
    int dof_;
};

class UnsupportedConfigError : public std::runtime_error {
  public:
    explicit UnsupportedConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fgbeam
