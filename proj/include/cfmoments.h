/*
 * cfmoments - continued-fraction period statistics of sqrt(d)
 *
 * C interface to a library that computes the period length T(d) of the
 * continued fraction of sqrt(d), the divisor-window counting function g(d)
 * that dominates it, exact moment sums of both over ranges, large-deviation
 * counts, and the analytic constants and bounds those statistics are checked
 * against.
 *
 * Conventions:
 *   - Every fallible function returns an int status code (CFM_OK on success)
 *     and writes results through out-parameters.
 *   - Functions returning plain values (cfm_isqrt, cfm_bernoulli3_frac, ...)
 *     are total over their documented domain.
 *   - 128-bit exact sums are returned as decimal strings; buffers of
 *     CFM_SUM_STR_LEN bytes always suffice.
 *   - Opaque handles are created and released by matching _build/_free pairs;
 *     handles are immutable after creation unless stated otherwise and may be
 *     read from any thread.
 */

#ifndef CFMOMENTS_H
#define CFMOMENTS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
enum {
  CFM_OK = 0,
  CFM_EINVAL = 1,    /* argument outside the documented domain */
  CFM_ERANGE = 2,    /* input exceeds the supported width */
  CFM_ENOMEM = 3,    /* allocation guard tripped */
  CFM_EOVERFLOW = 4, /* checked integer arithmetic would wrap */
  CFM_EBUF = 5,      /* caller buffer too small */
  CFM_EINTERNAL = 6  /* broken internal invariant */
};

/* Largest supported radicand / range bound. */
#define CFM_MAX_RADICAND (UINT64_C(1) << 40)

/* Decimal digits of a 128-bit sum plus sign headroom and terminator. */
#define CFM_SUM_STR_LEN 48

const char* cfm_strerror(int code);

/* ---- period of the continued fraction of sqrt(d) ---- */

/* Exact floor of sqrt(n); total on all 64-bit n. */
uint64_t cfm_isqrt(uint64_t n);

/* Period length of sqrt(d).  *period = 0 and *is_square = 1 when d is a
 * perfect square.  Either out-pointer may be NULL. */
int cfm_period_length(uint64_t d, uint64_t* period, int* is_square);

/* First `count` partial quotients a_0 .. a_{count-1} of sqrt(d), continuing
 * past the period end.  Rejects perfect squares with CFM_EINVAL. */
int cfm_partial_quotients(uint64_t d, size_t count, uint64_t* out);

/* ---- the counting function g(d) ---- */

/* A triple d = m*m + k*q with q - 2m < k < q + 2m; the pairs (m, q) of these
 * triples are exactly what g(d) counts. */
typedef struct {
  uint64_t m, q, k;
} cfm_triple;

int cfm_g_point(uint64_t d, uint64_t* g);

/* Writes up to cap witnesses sorted by (m, q); *written gets the full count
 * g(d).  Returns CFM_EBUF when cap < g(d) (the first cap are still written). */
int cfm_g_witnesses(uint64_t d, cfm_triple* out, size_t cap, size_t* written);

/* Full table of g over [1, x], sieved in blocks of chunk_size spread over
 * shards worker threads; the result is identical for every chunk/shard
 * choice.  Here and below, chunk_size = 0 picks the default of 2^20 and
 * shards = 0 uses the hardware thread count. */
typedef struct cfm_gtable cfm_gtable;

int cfm_gtable_build(uint64_t x, uint64_t chunk_size, uint64_t shards,
                     cfm_gtable** out);
void cfm_gtable_free(cfm_gtable* table);
uint64_t cfm_gtable_limit(const cfm_gtable* table);
int cfm_gtable_value(const cfm_gtable* table, uint64_t d, uint32_t* g);

/* ---- square congruences mod D ---- */

/* Rational in lowest terms with positive denominator. */
typedef struct {
  int64_t num;
  int64_t den;
} cfm_rational;

/* 1 iff m1^2 == m2^2 (mod modulus). */
int cfm_chi(uint64_t modulus, int64_t m1, int64_t m2, int* out);

/* Multiplicative pair-count density: k at 2^k, 1 + k - k/p at odd p^k;
 * cfm_c_closed(D) * D counts pairs (m1, m2) in [0,D)^2 with chi = 1. */
int cfm_c_closed(uint64_t modulus, cfm_rational* out);

/* Direct pair count / D via a frequency table of squares; modulus <= 5000. */
int cfm_c_brute(uint64_t modulus, cfm_rational* out);

/* Literal double loop over chi; modulus <= 300.  Validates cfm_c_brute. */
int cfm_c_brute_naive(uint64_t modulus, cfm_rational* out);

/* ---- analytic constants and bounds ---- */

typedef struct {
  double c1;      /* (4/3) log 2 */
  double c2;      /* ((8 sqrt 2 - 4)/3) log 2 */
  double F2;      /* (13/14) zeta(2)^2 / zeta(3) */
  double Htilde1; /* (18/15) zeta(2) / zeta(4) */
  double A;       /* (7/6) log 2 - 37/72 */
  double B;       /* (19/6) log 2 - 11/12 */
  double C;       /* 2 log 2 */
  double zeta2, zeta3, zeta4;
} cfm_constants;

int cfm_constants_get(cfm_constants* out);

/* Exact tail sum S(y) of 1/q over q in (y, 2y] and the theta solving
 * S(y) = log 2 - 1/(4y + 2 theta).  sum_frac (optional, else NULL) receives
 * the rational as "num/den" and must hold frac_cap bytes. */
int cfm_harmonic_tail(uint64_t y, double* theta, char* sum_frac, size_t frac_cap);

/* theta(y) for every y in [1, y_max]; out must hold y_max doubles, indexed
 * out[y-1].  Incremental exact-rational sweep, much faster than y_max
 * separate cfm_harmonic_tail calls. */
int cfm_harmonic_tail_sweep(uint64_t y_max, double* out);

/* t^3 - (3/2)t^2 + t/2 at the fractional part t of x; always in
 * [-1/20, 1/20]. */
double cfm_bernoulli3_frac(double x);

/* Riemann zeta, s > 1, absolute error under 1e-12. */
int cfm_zeta(double s, double* out);

/* ((4^s - 2^s + 1)/(4^s - 2^(s-1))) zeta(s)^2 / zeta(s+1), s > 1. */
int cfm_dirichlet_f(double s, double* out);

double cfm_htilde_at_1(void);

/* Adaptive quadrature of integral 'A', 'B' or 'C' over (0,1]^2 against its
 * log-2 closed form; tol >= 1e-10. */
int cfm_integral(char which, double tol, double* numeric, double* closed);

/* First-moment envelope for g at x >= 2:
 * lower = c1 x^(3/2) - 2x - 2 sqrt x, upper = lower + x + 4 sqrt x. */
int cfm_g_mean_envelope(uint64_t x, double* lower, double* upper);

/* 11.9 x^2 + 5 x^(3/2) log^2(4 e^4 x), the cap on both second moments. */
int cfm_second_moment_cap(uint64_t x, double* out);

/* Large-deviation caps at alpha = num/den: c2 x / alpha and 47 x / alpha^2. */
int cfm_deviation_caps(uint64_t x, uint64_t alpha_num, uint64_t alpha_den,
                       double* first, double* second);

/* ---- exact moment sums ---- */

/* Power sums of T and g over a range (x_lo, x_hi], exact in 128 bits. */
typedef struct cfm_accumulator cfm_accumulator;

/* rs lists the exponents (subset of {1,2,3,4}); include_primes != 0 also
 * fills the prime-restricted sums. */
int cfm_accumulate(uint64_t x_lo, uint64_t x_hi, const unsigned* rs, size_t rs_len,
                   int include_primes, uint64_t chunk_size, uint64_t shards,
                   cfm_accumulator** out);
void cfm_accumulator_free(cfm_accumulator* acc);

/* Folds src into dst; ranges must be adjacent and configurations equal. */
int cfm_accumulator_merge(cfm_accumulator* dst, const cfm_accumulator* src);

int cfm_accumulator_range(const cfm_accumulator* acc, uint64_t* x_lo, uint64_t* x_hi);
uint64_t cfm_accumulator_count(const cfm_accumulator* acc);
uint64_t cfm_accumulator_prime_count(const cfm_accumulator* acc);

/* Decimal string of one sum.  which is 'T' or 'g'; r must be one of the
 * requested exponents; primes_only != 0 selects the prime-restricted sum. */
int cfm_accumulator_sum(const cfm_accumulator* acc, char which, unsigned r,
                        int primes_only, char* out, size_t cap);

/* ---- derived reports ---- */

#define CFM_DEVIATION_SAMPLE 32

typedef struct {
  uint64_t x;
  uint64_t alpha_num, alpha_den;
  uint64_t count;          /* d in (x, 2x] with T(d) > alpha sqrt(d), exact */
  double bound_first;      /* c2 x / alpha */
  double bound_second;     /* 47 x / alpha^2 */
  uint64_t members[CFM_DEVIATION_SAMPLE]; /* smallest members, ascending */
  size_t member_count;     /* entries filled in members[] */
} cfm_deviation_report;

int cfm_deviation_count(uint64_t x, uint64_t alpha_num, uint64_t alpha_den,
                        uint64_t shards, cfm_deviation_report* out);

/* One bound check: measured (decimal integer or 12-digit real, exactly as
 * the CSV serializes it) against [lower, upper]. */
typedef struct {
  char check[40];
  uint64_t x;
  char measured[CFM_SUM_STR_LEN];
  double lower, upper;
  int pass;
} cfm_verify_row;

/* Evaluates every asserted bound at one x: the g first-moment envelope (as
 * theta membership and as the raw sum), the second-moment caps of g and T,
 * the first-moment cap of T, plus two deviation rows per supplied alpha.
 * Rows written up to cap; *written gets the total row count; *all_pass gets
 * the conjunction over all rows (even unwritten ones).  Returns CFM_EBUF
 * when cap is too small for every row. */
int cfm_verify_bounds(uint64_t x, const uint64_t* alpha_nums,
                      const uint64_t* alpha_dens, size_t alpha_len,
                      uint64_t chunk_size, uint64_t shards,
                      cfm_verify_row* rows, size_t cap, size_t* written,
                      int* all_pass);

typedef struct {
  uint64_t x;
  double ratio_mean;
  double ratio_second;
} cfm_figure_row;

/* Normalized moment curves at sample points up to x_max.  which = 1: mean of
 * T against sqrt(x)/(log x)^0.6 and second moment against x/(log x)^0.8;
 * which = 2: the same restricted to prime d, normalized by pi(x) and sqrt x
 * resp. x.  step = 0 samples 64 multiplicative points ending at x_max;
 * step >= 1 samples step, 2 step, ...  Rows written up to cap; *written gets
 * the total sample count; CFM_EBUF when some rows did not fit. */
int cfm_figure_series(uint64_t x_max, uint64_t step, int which,
                      uint64_t chunk_size, uint64_t shards,
                      cfm_figure_row* rows, size_t cap, size_t* written);

/* Primality table for 0..n written to out[0..n]; out must hold n+1 bytes. */
int cfm_prime_table(uint64_t n, uint8_t* out, size_t cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CFMOMENTS_H */
