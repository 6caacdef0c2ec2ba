#pragma once

#include <stdexcept>
#include <string>

namespace kicktop {

/// Base for all domain failures raised by the library. Precondition
/// violations on plain arguments use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment or model configuration (bad ranges, unknown keys).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A sampling patch that would extend past a pole of the sphere.
class PatchError : public Error {
 public:
  using Error::Error;
};

/// Gram-Schmidt produced a vanishing stretch factor.
class DegenerateTangentError : public Error {
 public:
  using Error::Error;
};

/// Quantum state norm drifted beyond tolerance during evolution.
class NormDriftError : public Error {
 public:
  using Error::Error;
};

/// Series analysis could not be carried out (too short, never equilibrated).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

}  // namespace kicktop
