#include "hiersparse/semiring.hpp"

#include <array>
#include <sstream>

namespace hiersparse {

namespace {

struct NameEntry {
  std::string_view name;
  SemiringKind kind;
};

constexpr std::array<NameEntry, 7> kBuiltins = {{
    {"plus_times", SemiringKind::PlusTimes},
    {"max_plus", SemiringKind::MaxPlus},
    {"min_plus", SemiringKind::MinPlus},
    {"max_times", SemiringKind::MaxTimes},
    {"min_times", SemiringKind::MinTimes},
    {"max_min", SemiringKind::MaxMin},
    {"min_max", SemiringKind::MinMax},
}};

} // namespace

Semiring Semiring::named(std::string_view name) {
  for (const auto& e : kBuiltins) {
    if (e.name == name) return Semiring(e.kind);
  }
  std::ostringstream msg;
  msg << "unknown semiring '" << name << "'; valid names:";
  for (const auto& e : kBuiltins) msg << ' ' << e.name;
  throw ConfigError(msg.str());
}

const std::vector<std::string_view>& Semiring::builtin_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& e : kBuiltins) v.push_back(e.name);
    return v;
  }();
  return names;
}

std::string_view Semiring::name() const {
  for (const auto& e : kBuiltins) {
    if (e.kind == kind_) return e.name;
  }
  return "?";
}

void Semiring::check_value(double v) const {
  if (std::isnan(v)) {
    throw DomainError("NaN value rejected at ingestion");
  }
  if (std::isinf(v) && v != zero()) {
    std::ostringstream msg;
    msg << "infinite value " << (v > 0 ? "+inf" : "-inf")
        << " cannot be stored under semiring " << name();
    throw DomainError(msg.str());
  }
  if (v < 0.0 && nonnegative_only()) {
    std::ostringstream msg;
    msg << "negative value " << v << " rejected: semiring " << name()
        << " is defined over nonnegative values";
    throw DomainError(msg.str());
  }
}

} // namespace hiersparse
