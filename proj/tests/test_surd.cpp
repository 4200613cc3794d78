#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/surd.hpp"

using namespace cfm;

namespace {

// Independent period oracle: walk the (m, q) states and report the first
// return to the state after one step.  Never looks at q == 1.
u64 oracle_period_by_state(u64 d) {
  u64 a0 = isqrt(d);
  u64 m = 0, q = 1, a = a0;
  m = a * q - m;
  q = (d - m * m) / q;
  a = (a0 + m) / q;
  u64 m1 = m, q1 = q;
  for (u64 k = 1;; ++k) {
    m = a * q - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    if (m == m1 && q == q1) return k;
  }
}

}  // namespace

TEST_CASE("isqrt exact floors") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(2) == 1);
  CHECK(isqrt(3) == 1);
  CHECK(isqrt(4) == 2);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  CHECK(isqrt(1000000000000000000ULL) == 1000000000ULL);

  // boundaries around perfect squares across the width
  for (u64 r : {u64(3), u64(1) << 16, u64(1) << 20, u64(99991), (u64(1) << 32) - 5}) {
    CHECK(isqrt(r * r) == r);
    CHECK(isqrt(r * r - 1) == r - 1);
    CHECK(isqrt(r * r + 1) == r);
  }

  std::mt19937_64 rng(42);
  for (int i = 0; i < 20000; ++i) {
    u64 n = rng();
    u64 r = isqrt(n);
    CHECK(u128(r) * r <= n);
    CHECK(u128(r + 1) * (r + 1) > n);
  }
}

TEST_CASE("period_length on pinned values") {
  CHECK(period_length(2).period == 1);
  CHECK(period_length(3).period == 2);
  CHECK(period_length(13).period == 5);
  CHECK(period_length(4).period == 0);
  CHECK(period_length(4).is_square);
  CHECK(period_length(1).is_square);
  CHECK_FALSE(period_length(2).is_square);
}

TEST_CASE("period_length matches the state-recurrence oracle") {
  for (u64 d = 2; d <= 2000; ++d) {
    u64 a0 = isqrt(d);
    if (a0 * a0 == d) {
      CHECK(period_length(d).period == 0);
    } else {
      CHECK(period_length(d).period == oracle_period_by_state(d));
    }
  }
}

TEST_CASE("small periods of the classic families") {
  // d = m^2 + 1 expands with period 1
  for (u64 m = 1; m <= 300; ++m) CHECK(period_length(m * m + 1).period == 1);

  // d = m^2 + 2m/a for proper divisors a of 2m has period 1 or 2, and
  // exactly 2 unless d happens to be of the n^2 + 1 shape
  for (u64 m = 1; m <= 300; ++m) {
    for (u64 a = 1; a < 2 * m; ++a) {
      if ((2 * m) % a != 0) continue;
      u64 d = m * m + (2 * m) / a;
      u64 t = period_length(d).period;
      u64 root = isqrt(d - 1);
      bool shape_n2_plus_1 = root * root == d - 1;
      CHECK((t == 1 || t == 2));
      if (!shape_n2_plus_1) CHECK(t == 2);
    }
  }
}

TEST_CASE("partial quotients") {
  CHECK(partial_quotients(2, 4) == std::vector<u64>{1, 2, 2, 2});
  CHECK(partial_quotients(7, 5) == std::vector<u64>{2, 1, 1, 1, 4});
  CHECK(partial_quotients(13, 1) == std::vector<u64>{3});
  CHECK_THROWS_AS(partial_quotients(9, 3), error);
  CHECK_THROWS_AS(partial_quotients(2, 0), error);
}

TEST_CASE("the period closes with the quotient 2*a0") {
  for (u64 d = 2; d <= 2000; ++d) {
    u64 a0 = isqrt(d);
    if (a0 * a0 == d) continue;
    u64 t = period_length(d).period;
    auto terms = partial_quotients(d, t + 1);
    CHECK(terms.back() == 2 * a0);
    // and the expansion repeats from there
    auto more = partial_quotients(d, 2 * t + 1);
    for (u64 k = 1; k <= t; ++k) CHECK(more[k] == more[k + t]);
  }
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(period_length(0), error);
  CHECK_NOTHROW(period_length(kMaxRadicand));
  try {
    period_length(kMaxRadicand + 1);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::range);
  }
  try {
    period_length(0);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid);
  }
}
