#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "hiersparse/errors.hpp"

namespace hiersparse {

enum class SemiringKind : std::uint8_t {
  PlusTimes,
  MaxPlus,
  MinPlus,
  MaxTimes,
  MinTimes,
  MaxMin,
  MinMax,
};

/// Value domain (V, plus, times, zero, one). Values are 64-bit floats;
/// the kind selects the pair of operations and their identities.
/// max_times and min_times are restricted to nonnegative values, where
/// distributivity actually holds. Immutable after construction.
class Semiring {
public:
  /// Looks up a builtin by name: plus_times, max_plus, min_plus,
  /// max_times, min_times, max_min, min_max. Throws ConfigError for
  /// anything else, naming the valid set.
  static Semiring named(std::string_view name);

  static const std::vector<std::string_view>& builtin_names();

  SemiringKind kind() const { return kind_; }
  std::string_view name() const;

  double plus(double a, double b) const {
    switch (kind_) {
      case SemiringKind::PlusTimes: return a + b;
      case SemiringKind::MaxPlus:
      case SemiringKind::MaxTimes:
      case SemiringKind::MaxMin: return a > b ? a : b;
      case SemiringKind::MinPlus:
      case SemiringKind::MinTimes:
      case SemiringKind::MinMax: return a < b ? a : b;
    }
    return a + b; // unreachable
  }

  double times(double a, double b) const {
    switch (kind_) {
      case SemiringKind::PlusTimes:
      case SemiringKind::MaxTimes:
      case SemiringKind::MinTimes: return a * b;
      case SemiringKind::MaxPlus:
      case SemiringKind::MinPlus: return a + b;
      case SemiringKind::MaxMin: return a < b ? a : b;
      case SemiringKind::MinMax: return a > b ? a : b;
    }
    return a * b; // unreachable
  }

  /// Additive identity and multiplicative annihilator.
  double zero() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case SemiringKind::PlusTimes: return 0.0;
      case SemiringKind::MaxPlus: return -inf;
      case SemiringKind::MinPlus: return inf;
      case SemiringKind::MaxTimes: return 0.0;
      case SemiringKind::MinTimes: return inf;
      case SemiringKind::MaxMin: return -inf;
      case SemiringKind::MinMax: return inf;
    }
    return 0.0; // unreachable
  }

  /// Multiplicative identity. Infinite for max_min and min_max; such
  /// identities exist only as scalars and are never stored in arrays.
  double one() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
      case SemiringKind::PlusTimes: return 1.0;
      case SemiringKind::MaxPlus: return 0.0;
      case SemiringKind::MinPlus: return 0.0;
      case SemiringKind::MaxTimes: return 1.0;
      case SemiringKind::MinTimes: return 1.0;
      case SemiringKind::MaxMin: return inf;
      case SemiringKind::MinMax: return -inf;
    }
    return 1.0; // unreachable
  }

  bool nonnegative_only() const {
    return kind_ == SemiringKind::MaxTimes || kind_ == SemiringKind::MinTimes;
  }

  /// Validates a value at ingestion. NaN is always rejected. An infinite
  /// value is accepted only when it equals this semiring's zero (an
  /// explicit zero, dropped after collapse); any other infinity would end
  /// up stored. Negative values are rejected under max_times/min_times.
  void check_value(double v) const;

  bool operator==(const Semiring& other) const { return kind_ == other.kind_; }
  bool operator!=(const Semiring& other) const { return kind_ != other.kind_; }

  explicit Semiring(SemiringKind k) : kind_(k) {}

private:
  SemiringKind kind_;
};

} // namespace hiersparse
