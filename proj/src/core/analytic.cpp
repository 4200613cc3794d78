#include "core/analytic.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "core/errors.hpp"

namespace cfm {

namespace {

double solve_theta(u64 y, const mpq_class& sum) {
  // sum = log 2 - 1/(4y + 2 theta)  =>  theta = (1/(log 2 - sum) - 4y) / 2.
  double gap = std::log(2.0) - mpq_get_d(sum.get_mpq_t());
  return (1.0 / gap - 4.0 * double(y)) / 2.0;
}

}  // namespace

HarmonicTail harmonic_tail(u64 y) {
  if (y == 0) fail(errc::invalid, "y must be positive");
  mpq_class sum(0, 1);
  for (u64 q = y + 1; q <= 2 * y; ++q) sum += mpq_class(1, q);
  return {sum, solve_theta(y, sum)};
}

std::vector<double> harmonic_tail_sweep(u64 y_max) {
  if (y_max == 0) fail(errc::invalid, "y_max must be positive");
  std::vector<double> thetas;
  thetas.reserve(y_max);
  mpq_class sum(1, 2);  // y = 1
  thetas.push_back(solve_theta(1, sum));
  for (u64 y = 2; y <= y_max; ++y) {
    // window (y-1, 2y-2] -> (y, 2y]: drop 1/y, gain 1/(2y-1) + 1/(2y)
    sum -= mpq_class(1, y);
    sum += mpq_class(1, 2 * y - 1);
    sum += mpq_class(1, 2 * y);
    thetas.push_back(solve_theta(y, sum));
  }
  return thetas;
}

double bernoulli3_frac(double x) {
  double t = x - std::floor(x);
  return t * t * t - 1.5 * t * t + 0.5 * t;
}

double zeta(double s) {
  if (!(s > 1.0)) fail(errc::invalid, "zeta requires s > 1");
  // Direct series to N, then Euler-Maclaurin: N^(1-s)/(s-1) + N^(-s)/2 plus
  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^(1-s-2k) corrections.  At N = 32 the
  // first omitted term is below 1e-20 for every s of interest here.
  constexpr int N = 32;
  constexpr double b2k_over_fact[] = {
      1.0 / 12,                    // B2/2!
      -1.0 / 720,                  // B4/4!
      1.0 / 30240,                 // B6/6!
      -1.0 / 1209600,              // B8/8!
      1.0 / 47900160,              // B10/10!
      -691.0 / 1307674368000.0,    // B12/12!
      1.0 / 74724249600.0,         // B14/14!
  };
  double sum = 0.0;
  for (int j = N - 1; j >= 1; --j) sum += std::pow(double(j), -s);
  sum += std::pow(double(N), 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(double(N), -s);
  double rising = s;                          // s(s+1)...(s+2k-2)
  double npow = std::pow(double(N), -s - 1);  // N^(1-s-2k)
  for (int k = 1; k <= int(std::size(b2k_over_fact)); ++k) {
    sum += b2k_over_fact[k - 1] * rising * npow;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    npow /= double(N) * double(N);
  }
  return sum;
}

double dirichlet_F(double s) {
  if (!(s > 1.0)) fail(errc::invalid, "dirichlet_F requires s > 1");
  double p4 = std::pow(4.0, s);
  double p2 = std::pow(2.0, s);
  double front = (p4 - p2 + 1.0) / (p4 - p2 / 2.0);
  double z = zeta(s);
  return front * z * z / zeta(s + 1.0);
}

double htilde_at_1() { return (18.0 / 15.0) * zeta(2.0) / zeta(4.0); }

namespace {

// ---- adaptive quadrature over kink-free triangles ----

constexpr int kGaussOrder = 12;

struct GaussRule {
  std::array<double, kGaussOrder> node;    // on (0,1)
  std::array<double, kGaussOrder> weight;  // summing to 1
};

GaussRule make_gauss_rule() {
  // Legendre nodes by Newton iteration on P_n; standard recurrence.
  GaussRule r{};
  const int n = kGaussOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.node[i] = 0.5 * (x + 1.0);
    r.weight[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // scaled for unit interval
  }
  return r;
}

const GaussRule& gauss_rule() {
  static const GaussRule r = make_gauss_rule();
  return r;
}

struct Tri {
  double ax, ay, bx, by, cx, cy;
};

// Tensor Gauss-Legendre through the collapsed map
//   P(u,v) = A + u (B - A) + u v (C - B),  |J| = 2 area u,
// which also tames the 1/r growth of the integrand at a triangle corner A
// touching the origin.
template <class F>
double quad_tri(const F& f, const Tri& t) {
  const GaussRule& g = gauss_rule();
  double e1x = t.bx - t.ax, e1y = t.by - t.ay;
  double e2x = t.cx - t.bx, e2y = t.cy - t.by;
  double jac = std::abs(e1x * (t.cy - t.ay) - e1y * (t.cx - t.ax));  // 2 area
  double total = 0.0;
  for (int i = 0; i < kGaussOrder; ++i) {
    double u = g.node[i];
    double row = 0.0;
    for (int j = 0; j < kGaussOrder; ++j) {
      double v = g.node[j];
      double px = t.ax + u * (e1x + v * e2x);
      double py = t.ay + u * (e1y + v * e2y);
      row += g.weight[j] * f(px, py);
    }
    total += g.weight[i] * u * row;
  }
  return total * jac;
}

template <class F>
double adapt_tri(const F& f, const Tri& t, double tol, int depth) {
  double whole = quad_tri(f, t);
  double mabx = 0.5 * (t.ax + t.bx), maby = 0.5 * (t.ay + t.by);
  double mbcx = 0.5 * (t.bx + t.cx), mbcy = 0.5 * (t.by + t.cy);
  double mcax = 0.5 * (t.cx + t.ax), mcay = 0.5 * (t.cy + t.ay);
  Tri kids[4] = {
      {t.ax, t.ay, mabx, maby, mcax, mcay},  // keeps corner A first
      {mabx, maby, t.bx, t.by, mbcx, mbcy},
      {mcax, mcay, mbcx, mbcy, t.cx, t.cy},
      {mabx, maby, mbcx, mbcy, mcax, mcay},
  };
  double parts = 0.0;
  for (const Tri& k : kids) parts += quad_tri(f, k);
  if (std::abs(parts - whole) <= tol || depth >= 40) return parts;
  double out = 0.0;
  for (const Tri& k : kids) out += adapt_tri(f, k, tol / 4.0, depth + 1);
  return out;
}

double ratio_min(double a, double b) { return std::min((1.0 - a) / b, (1.0 - b) / a); }

double half_min(double a) { return std::min(0.5, 1.0 - a); }

template <class F>
double integrate_unit_square(const F& f, double tol) {
  // Kinks of the integrands lie on a=b, a+b=1, a=1/2, b=1/2, all through
  // (1/2,1/2); the eight fan triangles below are kink-free in the interior.
  // The two triangles meeting (0,0) list it first so the collapsed map
  // absorbs the 1/r growth there.
  const double h = 0.5;
  Tri fan[8] = {
      {0, 0, h, 0, h, h},
      {0, 0, h, h, 0, h},
      {1, 0, h, h, h, 0},
      {1, 0, 1, h, h, h},
      {1, 1, h, h, 1, h},
      {1, 1, h, 1, h, h},
      {0, 1, h, h, h, 1},
      {0, 1, 0, h, h, h},
  };
  double total = 0.0;
  for (const Tri& t : fan) total += adapt_tri(f, t, tol / 8.0, 0);
  return total;
}

}  // namespace

IntegralResult integral_abc(char which, double tol) {
  if (!(tol >= 1e-10)) fail(errc::invalid, "tolerance below supported floor");
  const double log2 = std::log(2.0);
  switch (which) {
    case 'A':
    case 'a': {
      auto f = [](double a, double b) {
        return half_min(a) * half_min(b) * ratio_min(a, b);
      };
      return {integrate_unit_square(f, tol), (7.0 / 6.0) * log2 - 37.0 / 72.0};
    }
    case 'B':
    case 'b': {
      auto f = [](double a, double b) {
        return (half_min(a) + half_min(b)) * ratio_min(a, b);
      };
      return {integrate_unit_square(f, tol), (19.0 / 6.0) * log2 - 11.0 / 12.0};
    }
    case 'C':
    case 'c': {
      auto f = [](double a, double b) { return ratio_min(a, b); };
      return {integrate_unit_square(f, tol), 2.0 * log2};
    }
    default:
      fail(errc::invalid, "integral selector must be A, B or C");
  }
}

BoundEnvelope g_mean_envelope(u64 x) {
  if (x < 2) fail(errc::invalid, "envelope requires x >= 2");
  double xd = double(x);
  double sx = std::sqrt(xd);
  double lower = kC1 * xd * sx - 2.0 * xd - 2.0 * sx;
  return {x, lower, lower + xd + 4.0 * sx};
}

double second_moment_cap(u64 x) {
  if (x == 0) fail(errc::invalid, "x must be positive");
  double xd = double(x);
  double lg = std::log(4.0 * std::exp(4.0) * xd);
  return 11.9 * xd * xd + 5.0 * xd * std::sqrt(xd) * lg * lg;
}

DeviationCaps deviation_caps(u64 x, double alpha) {
  if (x == 0 || !(alpha > 0.0)) fail(errc::invalid, "need x >= 1 and alpha > 0");
  double xd = double(x);
  return {kC2 * xd / alpha, 47.0 * xd / (alpha * alpha)};
}

Constants constants() {
  Constants c{};
  c.c1 = kC1;
  c.c2 = kC2;
  c.F2 = dirichlet_F(2.0);
  c.Htilde1 = htilde_at_1();
  const double log2 = std::log(2.0);
  c.A = (7.0 / 6.0) * log2 - 37.0 / 72.0;
  c.B = (19.0 / 6.0) * log2 - 11.0 / 12.0;
  c.C = 2.0 * log2;
  c.zeta2 = zeta(2.0);
  c.zeta3 = zeta(3.0);
  c.zeta4 = zeta(4.0);
  return c;
}

}  // namespace cfm
