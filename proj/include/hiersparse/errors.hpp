#pragma once

#include <stdexcept>
#include <string>

namespace hiersparse {

/// Invalid configuration: unknown semiring name, non-increasing cut
/// sequence, bad generator parameters. Raised before any work starts.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A value or key sequence violates the rules of the target semiring or
/// operation: NaN, stray infinity, negative value under a
/// nonnegative-only semiring, mismatched triple lengths, repeated keys
/// where uniqueness is required.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands were built over different semirings.
class AlgebraError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed file contents; the message names the offending line.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure; the message names the path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace hiersparse
