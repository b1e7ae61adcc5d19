#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvac {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch, malformed argument, or any other caller-side contract breach.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// det(D eta) <= 0 somewhere. Carries the worst node and its Jacobian.
class DegenerateMapError : public Error {
 public:
  DegenerateMapError(std::ptrdiff_t node, double J)
      : Error("degenerate flow map: J = " + std::to_string(J) + " at node " + std::to_string(node)),
        node_(node),
        J_(J) {}
  std::ptrdiff_t node() const { return node_; }
  double jacobian() const { return J_; }

 private:
  std::ptrdiff_t node_;
  double J_;
};

class InvalidExponentError : public Error {
 public:
  using Error::Error;
};

class InvalidDensityError : public Error {
 public:
  using Error::Error;
};

/// Requested derivative order needs a wider stencil than the grid provides.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Test function with vanishing Hardy denominator.
class DegenerateTestFunctionError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// The flow left the admissible region ||A - I|| <= A_dev_max, J_lo <= J <= J_hi.
class GuardrailBreach : public Error {
 public:
  GuardrailBreach(const std::string& what, std::ptrdiff_t node, double time, double adev, double jmin,
                  double jmax)
      : Error(what), node_(node), time_(time), adev_(adev), jmin_(jmin), jmax_(jmax) {}
  std::ptrdiff_t node() const { return node_; }
  double time() const { return time_; }
  double adev() const { return adev_; }
  double jmin() const { return jmin_; }
  double jmax() const { return jmax_; }

 private:
  std::ptrdiff_t node_;
  double time_, adev_, jmin_, jmax_;
};

/// Configuration parse or validation failure; names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace pvac
