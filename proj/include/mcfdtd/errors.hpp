#pragma once

#include <stdexcept>
#include <string>

namespace mcfdtd {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a multicomplex inverse hits a (near-)zero divisor.
/// C^n contains true zero divisors for n >= 2, e.g. (1 + j1*j2), so this
/// must be detected rather than silently producing infinities.
class NotInvertibleError : public Error {
 public:
  explicit NotInvertibleError(const std::string& what) : Error(what) {}
};

/// Thrown by the FDTD steppers when a field magnitude exceeds the
/// instability threshold.
class DivergedError : public Error {
 public:
  explicit DivergedError(const std::string& what) : Error(what) {}
};

/// Configuration parse or validation failure.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace mcfdtd
