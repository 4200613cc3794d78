#pragma once

#include <numeric>

#include "core/ints.hpp"

namespace cfm {

// Lowest-terms rational with a positive denominator.  Wide enough for the
// pair-count values here (numerators stay below D^2 <= 2^52 at the oracle cap).
struct Rational {
  i64 num = 0;
  i64 den = 1;

  static Rational make(i64 n, i64 d);
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational rat_mul(const Rational& a, const Rational& b);

// 1 iff m1^2 == m2^2 (mod D).  m1, m2 may be any integers.
int chi(u64 D, i64 m1, i64 m2);

// The multiplicative pair-count density: on prime powers p^k it equals k for
// p = 2 and 1 + k - k/p for odd p, extended over the factorization of D.
// c(D) * D counts pairs (m1, m2) in [0,D)^2 with chi(D, m1, m2) = 1.
Rational c_closed(u64 D);

// Oracle for c_closed: counts the chi pairs directly via a frequency table of
// squares mod D, returning count/D.  Capped at `cap` (O(D) time, O(D) space).
Rational c_brute(u64 D, u64 cap = 5000);

// Ground-truth variant of c_brute: the literal O(D^2) double loop over chi.
// Capped low; exists to validate the frequency-table shortcut.
Rational c_brute_naive(u64 D, u64 cap = 300);

}  // namespace cfm
