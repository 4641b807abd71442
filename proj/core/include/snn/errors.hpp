#pragma once

#include <stdexcept>
#include <string>

namespace snn {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid user-facing configuration (bad parameter, unknown name, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Shape/dimension mismatch between arguments.
struct DimensionError : Error {
  using Error::Error;
};

/// Non-finite data where finite values are required.
struct NumericError : Error {
  using Error::Error;
};

/// Linear-system assembly failure (e.g. an all-zero row).
struct AssemblyError : Error {
  using Error::Error;
};

/// Training diverged or produced a non-finite loss.
struct TrainingError : Error {
  using Error::Error;
};

/// A loss functional was built from inconsistent or unsupported pieces.
struct ConstructionError : Error {
  using Error::Error;
};

/// An error norm is undefined (reference field identically zero).
struct NormError : Error {
  using Error::Error;
};

/// Config-file parse or validation failure (CLI layer).
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace snn
