#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hiersparse/errors.hpp"
#include "hiersparse/semiring.hpp"
#include "test_support.hpp"

using hiersparse::ConfigError;
using hiersparse::DomainError;
using hiersparse::Semiring;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("builtin lookup and identities") {
  struct Row {
    const char* name;
    double zero;
    double one;
  };
  // The identity table: plus_times (0,1), max_plus (-inf,0),
  // min_plus (+inf,0), max_times (0,1), min_times (+inf,1),
  // max_min (-inf,+inf), min_max (+inf,-inf).
  const Row table[] = {
      {"plus_times", 0.0, 1.0},  {"max_plus", -kInf, 0.0},
      {"min_plus", kInf, 0.0},   {"max_times", 0.0, 1.0},
      {"min_times", kInf, 1.0},  {"max_min", -kInf, kInf},
      {"min_max", kInf, -kInf},
  };
  for (const Row& row : table) {
    const Semiring s = Semiring::named(row.name);
    CAPTURE(row.name);
    CHECK(s.zero() == row.zero);
    CHECK(s.one() == row.one);
    CHECK(s.name() == row.name);
  }
  CHECK(Semiring::builtin_names().size() == 7);
  CHECK_THROWS_AS(Semiring::named("bogus"), ConfigError);
  CHECK_THROWS_AS(Semiring::named(""), ConfigError);
  // The error names the valid set so a typo in a config is self-healing.
  try {
    Semiring::named("maxplus");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("max_plus") != std::string::npos);
  }
}

TEST_CASE("worked examples") {
  const Semiring pt = Semiring::named("plus_times");
  CHECK(pt.plus(2, 3) == 5);
  CHECK(pt.times(2, 3) == 6);

  const Semiring mp = Semiring::named("max_plus");
  CHECK(mp.plus(2, 3) == 3);
  CHECK(mp.times(2, 3) == 5);

  const Semiring mm = Semiring::named("min_max");
  CHECK(mm.plus(2, 3) == 2);
  CHECK(mm.times(2, 3) == 3);
}

TEST_CASE("identities verified exhaustively on a small grid") {
  // Every builtin, every v in a grid spanning negatives, zero and
  // positives (nonnegative slice for the restricted semirings).
  for (const Semiring& s : testsup::all_semirings()) {
    CAPTURE(s.name());
    for (int i = -8; i <= 8; ++i) {
      const double v = double(i) / 2.0;
      if (s.nonnegative_only() && v < 0) continue;
      CHECK(s.plus(v, s.zero()) == v);
      CHECK(s.plus(s.zero(), v) == v);
      CHECK(s.times(v, s.one()) == v);
      CHECK(s.times(s.one(), v) == v);
      // Skip the one IEEE-indeterminate spot (0 * inf); the library never
      // multiplies by the additive identity.
      if (v == 0.0 && std::isinf(s.zero())) continue;
      CHECK(s.times(v, s.zero()) == s.zero());
      CHECK(s.times(s.zero(), v) == s.zero());
    }
  }
}

TEST_CASE("scalar semiring laws on random values") {
  std::mt19937_64 rng(0x5e311);
  for (const Semiring& s : testsup::all_semirings()) {
    CAPTURE(s.name());
    const bool exact = s.kind() != hiersparse::SemiringKind::PlusTimes;
    for (int trial = 0; trial < 1000; ++trial) {
      const double a = testsup::random_value(rng, s);
      const double b = testsup::random_value(rng, s);
      const double c = testsup::random_value(rng, s);

      CHECK(s.plus(a, b) == s.plus(b, a));
      CHECK(s.plus(s.plus(a, b), c) == s.plus(a, s.plus(b, c)));
      CHECK(s.times(s.times(a, b), c) == s.times(a, s.times(b, c)));

      const double lhs = s.times(a, s.plus(b, c));
      const double rhs = s.plus(s.times(a, b), s.times(a, c));
      if (exact) {
        CHECK(lhs == rhs);
      } else {
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }

      CHECK(s.plus(a, s.zero()) == a);
      CHECK(s.times(a, s.one()) == a);
      // 0 * inf is indeterminate in IEEE; the library never forms a
      // product with the additive identity (absent entries are skipped
      // structurally), so only check where the product is defined.
      if (!(a == 0.0 && std::isinf(s.zero()))) {
        CHECK(s.times(a, s.zero()) == s.zero());
      }
    }
  }
}

TEST_CASE("value validation at ingestion") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const Semiring& s : testsup::all_semirings()) {
    CAPTURE(s.name());
    CHECK_THROWS_AS(s.check_value(nan), DomainError);
    s.check_value(0.0);
    s.check_value(3.5);
    // An infinity is only admissible as the semiring's own zero.
    if (std::isinf(s.zero())) {
      s.check_value(s.zero());
      CHECK_THROWS_AS(s.check_value(-s.zero()), DomainError);
    } else {
      CHECK_THROWS_AS(s.check_value(kInf), DomainError);
      CHECK_THROWS_AS(s.check_value(-kInf), DomainError);
    }
    if (s.nonnegative_only()) {
      CHECK_THROWS_AS(s.check_value(-1.0), DomainError);
    } else {
      s.check_value(-1.0);
    }
  }
}
