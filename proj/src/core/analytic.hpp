#pragma once

#include <cmath>
#include <vector>

#include <gmpxx.h>

#include "core/ints.hpp"

namespace cfm {

// (4/3) log 2 and ((8 sqrt 2 - 4)/3) log 2, the constants in the first-moment
// asymptotic and the dyadic first-moment cap.
inline const double kC1 = (4.0 / 3.0) * std::log(2.0);
inline const double kC2 = ((8.0 * std::sqrt(2.0) - 4.0) / 3.0) * std::log(2.0);

struct HarmonicTail {
  mpq_class sum;  // sum of 1/q for q in (y, 2y], exact
  double theta;   // solves sum = log 2 - 1/(4y + 2 theta)
};

HarmonicTail harmonic_tail(u64 y);

// theta(y) for every y in [1, y_max], via the incremental identity
// S(y+1) = S(y) - 1/(y+1) + 1/(2y+1) + 1/(2y+2).  Exact rational state;
// only the final solve for theta rounds.
std::vector<double> harmonic_tail_sweep(u64 y_max);

// t^3 - (3/2) t^2 + t/2 at the fractional part t of x; ranges over
// [-1/20, 1/20].
double bernoulli3_frac(double x);

// Riemann zeta for s > 1, absolute error well under 1e-12.
double zeta(double s);

// ((4^s - 2^s + 1) / (4^s - 2^(s-1))) * zeta(s)^2 / zeta(s+1), the Dirichlet
// series of the pair-count density; s > 1.
double dirichlet_F(double s);

// (18/15) * zeta(2) / zeta(4).
double htilde_at_1();

struct IntegralResult {
  double numeric;
  double closed;
};

// The three double integrals over (0,1]^2 of
//   A: min(1/2, 1-a) * min(1/2, 1-b) * R(a,b)
//   B: (min(1/2, 1-a) + min(1/2, 1-b)) * R(a,b)
//   C: R(a,b)
// where R(a,b) = min((1-a)/b, (1-b)/a), against their log-2 closed forms.
// `numeric` comes from adaptive quadrature to absolute tolerance tol.
IntegralResult integral_abc(char which, double tol);

struct BoundEnvelope {
  u64 x = 0;
  double lower = 0;
  double upper = 0;
};

// Envelope for the first moment of g: lower = c1 x^(3/2) - 2x - 2 sqrt x,
// upper = lower + x + 4 sqrt x.  Requires x >= 2.
BoundEnvelope g_mean_envelope(u64 x);

// Cap for the second moments: 11.9 x^2 + 5 x^(3/2) log^2(4 e^4 x).
double second_moment_cap(u64 x);

struct DeviationCaps {
  double first;   // c2 x / alpha
  double second;  // 47 x / alpha^2
};

DeviationCaps deviation_caps(u64 x, double alpha);

struct Constants {
  double c1, c2, F2, Htilde1, A, B, C, zeta2, zeta3, zeta4;
};

// All constants evaluated fresh; quadrature cross-checks live in
// integral_abc, not here.
Constants constants();

}  // namespace cfm
