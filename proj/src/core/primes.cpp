#include "core/primes.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/surd.hpp"

namespace cfm {

std::vector<bool> prime_table(u64 n) {
  if (n < 2) fail(errc::invalid, "table needs n >= 2");
  if (n >= kMaxTableSize) fail(errc::memory, "table size exceeds budget");
  std::vector<bool> is_prime(n + 1, true);
  is_prime[0] = is_prime[1] = false;
  for (u64 p = 2; p * p <= n; ++p) {
    if (!is_prime[p]) continue;
    for (u64 v = p * p; v <= n; v += p) is_prime[v] = false;
  }
  return is_prime;
}

std::vector<u32> base_primes(u64 limit) {
  std::vector<u32> out;
  if (limit < 2) return out;
  auto table = prime_table(limit);
  for (u64 p = 2; p <= limit; ++p)
    if (table[p]) out.push_back(u32(p));
  return out;
}

std::vector<bool> prime_segment(u64 lo, u64 hi, const std::vector<u32>& base) {
  std::vector<bool> flag(hi - lo, true);
  if (lo == 0) flag[0] = false;  // d = 1
  for (u32 p32 : base) {
    u64 p = p32;
    if (p * p > hi) break;
    // First multiple of p inside (lo, hi] that is not p itself; smaller
    // multiples were struck by smaller primes of theirs.
    u64 start = std::max(p * p, (lo / p + 1) * p);
    for (u64 v = start; v <= hi; v += p) flag[v - lo - 1] = false;
  }
  return flag;
}

}  // namespace cfm
