#pragma once

#include <stdexcept>
#include <string>

namespace scar {

// Every failure raised by the library derives from Error so callers can catch
// one type; the CLI maps the categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// System size outside the supported range.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Model/scheme/initial-state combination that cannot be built.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed numerical input (non-normalized vector, non-orthonormal basis, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for the dense eigensolver.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Closed-form formula evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// FSA started from a state that the backward ladder does not annihilate.
class SchemeMismatchError : public Error {
 public:
  using Error::Error;
};

/// Ladder decomposition requested for terms that have no ladder form.
class UnsupportedSplitError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace scar
