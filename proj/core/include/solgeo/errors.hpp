/// @file errors.hpp
/// @brief Error taxonomy shared by the whole library.
///
/// Every failure the library can diagnose is reported as a solgeo::Error
/// carrying a machine-readable kind.  The CLI maps kinds onto process exit
/// codes (manifest problems vs. model-construction problems vs. verification
/// failures), so the distinctions here are part of the external contract.

#pragma once

#include <stdexcept>
#include <string>

namespace solgeo {

enum class ErrorKind {
  invalid_point,            // point outside a chart's validity region
  degenerate_metric,        // metric not positive definite / not invertible
  unsupported_dimension,    // operation undefined in this dimension (e.g. Weyl for n < 3)
  invalid_profile,          // unknown warp/potential profile name
  soliton_residual_failed,  // instance does not satisfy Ric + Hess f = lambda*g
  hypothesis_violated,      // diagnostic preconditions not met (e.g. scal <= 0)
  unknown_model,            // builder name not in the catalog
  builder_error,            // bad builder parameters
  bad_manifest,             // manifest parse or schema error
  internal,                 // "cannot happen" guard tripped
};

/// Human-readable tag used in reports and error messages.
const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace solgeo
