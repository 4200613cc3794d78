#pragma once

#include <vector>

#include "core/ints.hpp"

namespace cfm {

// Primality table for 0..n; table[i] is true iff i is prime.
std::vector<bool> prime_table(u64 n);

// Primes up to limit, for seeding segmented sieves.
std::vector<u32> base_primes(u64 limit);

// Primality flags for d in (lo, hi]: flag[d - lo - 1].  `base` must contain
// every prime up to isqrt(hi).
std::vector<bool> prime_segment(u64 lo, u64 hi, const std::vector<u32>& base);

}  // namespace cfm
