#include "core/surd.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace cfm {

u64 isqrt(u64 n) noexcept {
  // Float seed, then exact correction.  The double rounds by at most one ulp
  // near 2^53, so a couple of integer steps land on the true floor.
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && u128(r) * r > n) --r;
  while (u128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

void check_radicand(u64 d) {
  if (d == 0) fail(errc::invalid, "radicand must be positive");
  if (d > kMaxRadicand) fail(errc::range, "radicand exceeds supported width");
}

}  // namespace

u64 period_length_with_root(u64 d, u64 a0) {
  // sqrt(d) = a0 + 1/(a1 + 1/(a2 + ...)) with the complete quotients kept in
  // the form (sqrt(d) + m) / q.  States satisfy q | d - m*m, 0 <= m <= a0,
  // 1 <= q <= 2*a0 + 1, so the walk is finite and the first return to q == 1
  // closes the period.
  u64 m = 0, q = 1, a = a0;
  u64 bound = 2 * d;  // period never reaches this; trips only on a bug
  for (u64 k = 1; k <= bound; ++k) {
    m = a * q - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    if (q == 1) return k;
  }
  fail(errc::internal, "period recurrence failed to close");
}

PeriodResult period_length(u64 d) {
  check_radicand(d);
  u64 a0 = isqrt(d);
  if (a0 * a0 == d) return {0, true};
  return {period_length_with_root(d, a0), false};
}

std::vector<u64> partial_quotients(u64 d, u64 limit) {
  check_radicand(d);
  if (limit == 0) fail(errc::invalid, "limit must be positive");
  u64 a0 = isqrt(d);
  if (a0 * a0 == d) fail(errc::invalid, "expansion of a perfect square terminates");

  std::vector<u64> out;
  out.reserve(limit);
  out.push_back(a0);
  u64 m = 0, q = 1, a = a0;
  while (out.size() < limit) {
    m = a * q - m;
    q = (d - m * m) / q;
    a = (a0 + m) / q;
    out.push_back(a);
  }
  return out;
}

}  // namespace cfm
