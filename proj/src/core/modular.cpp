#include "core/modular.hpp"

#include <vector>

#include "core/errors.hpp"

namespace cfm {

Rational Rational::make(i64 n, i64 d) {
  if (d == 0) fail(errc::invalid, "zero denominator");
  if (d < 0) { n = -n; d = -d; }
  i64 g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) { n /= g; d /= g; }
  return {n, d};
}

Rational rat_mul(const Rational& a, const Rational& b) {
  // Cross-cancel first so intermediates stay small.
  i64 g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  i64 g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  return Rational::make((a.num / g1) * (b.num / g2), (a.den / g2) * (b.den / g1));
}

namespace {

u64 square_mod(u64 D, i64 m) {
  u64 r = u64(((m % i64(D)) + i64(D)) % i64(D));
  return u64(u128(r) * r % D);
}

}  // namespace

int chi(u64 D, i64 m1, i64 m2) {
  if (D == 0) fail(errc::invalid, "modulus must be positive");
  return square_mod(D, m1) == square_mod(D, m2) ? 1 : 0;
}

Rational c_closed(u64 D) {
  if (D == 0) fail(errc::invalid, "D must be positive");
  if (D > kMaxRadicand) fail(errc::range, "D exceeds supported width");
  Rational out{1, 1};
  u64 n = D;
  // c(2^k) = k; c(p^k) = 1 + k - k/p for odd p.  The even part goes first so
  // the trailing n > 1 leftover is always an odd prime.
  if (n % 2 == 0) {
    i64 k = 0;
    while (n % 2 == 0) { n /= 2; ++k; }
    out = rat_mul(out, Rational{k, 1});
  }
  for (u64 p = 3; p * p <= n; p += 2) {
    if (n % p != 0) continue;
    i64 k = 0;
    while (n % p == 0) { n /= p; ++k; }
    out = rat_mul(out, Rational::make((1 + k) * i64(p) - k, i64(p)));
  }
  if (n > 1) out = rat_mul(out, Rational::make(i64(n) + i64(n) - 1, i64(n)));
  return out;
}

Rational c_brute(u64 D, u64 cap) {
  if (D == 0) fail(errc::invalid, "D must be positive");
  if (D > cap) fail(errc::invalid, "D exceeds oracle cap");
  // count[s] = #{m in [0,D) : m^2 = s mod D}; matching pairs are then
  // sum count[s]^2, because chi pairs exactly the m sharing a square class.
  std::vector<u64> count(D, 0);
  for (u64 m = 0; m < D; ++m) ++count[u64(u128(m) * m % D)];
  u64 pairs = 0;
  for (u64 c : count) pairs += c * c;
  return Rational::make(i64(pairs), i64(D));
}

Rational c_brute_naive(u64 D, u64 cap) {
  if (D == 0) fail(errc::invalid, "D must be positive");
  if (D > cap) fail(errc::invalid, "D exceeds oracle cap");
  u64 pairs = 0;
  for (u64 m1 = 0; m1 < D; ++m1)
    for (u64 m2 = 0; m2 < D; ++m2) pairs += u64(chi(D, i64(m1), i64(m2)));
  return Rational::make(i64(pairs), i64(D));
}

}  // namespace cfm
