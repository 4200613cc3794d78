#pragma once

#include <span>
#include <vector>

#include "core/ints.hpp"

namespace cfm {

// One member of the triple set behind g(d): d = m*m + k*q with
// q - 2m < k < q + 2m and m*m < d.
struct GWitness {
  u64 m = 0;
  u64 q = 0;
  u64 k = 0;
};

struct GTable {
  u64 x = 0;
  std::vector<u32> values;  // values[d-1] = g(d) for 1 <= d <= x

  u32 at(u64 d) const { return values.at(d - 1); }
};

// Number of pairs (m, q) with m*m < d, q | d - m*m, and q within the open
// window of radius m around sqrt(d); in integer form d < (q+m)^2 and
// (q <= m or (q-m)^2 < d).
u64 g_point(u64 d);

// The triples (m, q, k) counted by g_point, sorted by (m, q).
std::vector<GWitness> g_witnesses(u64 d);

// Accumulates g(d) for d in (lo, hi] into counts[d - lo - 1], which must hold
// hi - lo entries.  Callers zero the span beforehand.
void g_sieve_block(u64 lo, u64 hi, std::span<u32> counts);

// Full table of g over [1, x], sieved in blocks of chunk_size distributed
// round-robin over shards worker threads.  Output is identical for every
// (chunk_size, shards) pair.
GTable g_tabulate(u64 x, u64 chunk_size, u64 shards);

}  // namespace cfm
