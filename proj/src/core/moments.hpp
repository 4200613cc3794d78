#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "core/analytic.hpp"
#include "core/ints.hpp"

namespace cfm {

// Exact power sums of T and g over d in (x_lo, x_hi], for the exponents in
// rs (subset of {1,2,3,4}).  Prime-restricted mirrors are filled when
// with_primes is set.  128-bit fields hold every sum representable at the
// supported width; overflow checks refuse to wrap.
struct MomentAccumulator {
  u64 x_lo = 0, x_hi = 0;
  std::vector<unsigned> rs;  // sorted, unique
  bool with_primes = false;
  u64 count = 0;        // number of d in the range
  u64 prime_count = 0;  // primes among them
  std::array<u128, 5> sums_T{}, sums_g{};
  std::array<u128, 5> prime_sums_T{}, prime_sums_g{};
};

MomentAccumulator accumulate(u64 x_lo, u64 x_hi, std::vector<unsigned> rs,
                             bool include_primes, u64 chunk_size, u64 shards);

// Folds src into dst.  The ranges must be adjacent (either order) and the
// accumulators must agree on rs and with_primes; exact integer merge, so the
// result is independent of association order over a chain of adjacent parts.
void merge_into(MomentAccumulator& dst, const MomentAccumulator& src);

std::string u128_to_string(u128 v);
double u128_to_double(u128 v);

struct DeviationReport {
  u64 x = 0;
  u64 alpha_num = 1, alpha_den = 1;
  u64 count = 0;           // d in (x, 2x] with T(d) > alpha sqrt(d)
  double bound_first = 0;  // c2 x / alpha
  double bound_second = 0; // 47 x / alpha^2
  std::vector<u64> members_sample;  // first kDeviationSampleSize members
};

inline constexpr size_t kDeviationSampleSize = 32;

// Counts d in (x, 2x] with T(d) > (p/q) sqrt(d), decided exactly as
// q^2 T^2 > p^2 d in integers.
DeviationReport deviation_count(u64 x, u64 alpha_num, u64 alpha_den, u64 shards);

// One bound check: is `measured` inside [lower, upper]?
struct VerifyRow {
  std::string check;
  u64 x = 0;
  std::string measured;  // decimal integer or 12-digit real
  double lower = 0;
  double upper = 0;
  bool pass = false;
};

struct VerificationReport {
  u64 x = 0;
  u128 sum_g = 0, sum_g2 = 0;
  u128 sum_T = 0, sum_T2 = 0;
  double theta_empirical = 0;
  bool mean_pass = false;    // theta in [0,1]
  bool second_pass = false;  // sum g^2 under the cap
  bool t_first_pass = false;
  bool t_second_pass = false;
  std::vector<VerifyRow> rows;
};

// Evaluates every bound the tool asserts at one x: the first-moment envelope
// of g, the second-moment caps for g and T, the first-moment cap for T, and
// the deviation caps for each supplied alpha (exact rationals p/q).
VerificationReport verify_bounds(u64 x, const std::vector<std::pair<u64, u64>>& alphas,
                                 u64 chunk_size, u64 shards);

struct FigureRow {
  u64 x = 0;
  double ratio_mean = 0;
  double ratio_second = 0;
};

// Normalized moment curves.  which = 1: mean of T over all d against
// sqrt(x)/(log x)^0.6 and the second moment against x/(log x)^0.8.
// which = 2: the same moments restricted to prime d, normalized by pi(x)
// and sqrt(x) resp. x.  step = 0 picks 64 multiplicatively spaced sample
// points ending exactly at x_max; step >= 1 samples step, 2*step, ...
std::vector<FigureRow> figure_series(u64 x_max, u64 step, int which,
                                     u64 chunk_size, u64 shards);

}  // namespace cfm
