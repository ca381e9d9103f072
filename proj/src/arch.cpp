#include "qc/arch.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qc {

namespace {

constexpr double kPi = std::numbers::pi;

double agm(double a, double b) {
  // degenerate input (double root): limit is 0, so the period becomes inf
  // and callers discard or flag the point
  if (!(a > 0.0) || !(b > 0.0)) return 0.0;
  for (int i = 0; i < 60 && std::abs(a - b) > 1e-17 * (a + b); ++i) {
    double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return 0.5 * (a + b);
}

struct CubicRoots {
  // roots of x^3 + p x + q
  int real_count = 0;
  double e1 = 0, e2 = 0, e3 = 0;  // three real: e1 > e2 > e3
  double alpha = 0, beta = 0;     // one real e1, pair alpha +- i beta
};

CubicRoots solve_depressed_cubic(double p, double q) {
  CubicRoots r;
  double disc = -4 * p * p * p - 27 * q * q;
  if (disc > 0) {
    r.real_count = 3;
    double m = 2 * std::sqrt(-p / 3.0);
    double theta = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
    std::array<double, 3> e = {m * std::cos(theta),
                               m * std::cos(theta - 2 * kPi / 3),
                               m * std::cos(theta - 4 * kPi / 3)};
    std::sort(e.begin(), e.end(), std::greater<>());
    r.e1 = e[0];
    r.e2 = e[1];
    r.e3 = e[2];
  } else {
    r.real_count = 1;
    double s = std::sqrt(q * q / 4 + p * p * p / 27);
    double u = std::cbrt(-q / 2 + s), v = std::cbrt(-q / 2 - s);
    r.e1 = u + v;
    r.alpha = -r.e1 / 2;
    // x^3 + p x + q = (x - e1)(x^2 + e1 x + (e1^2 + p)), so the conjugate
    // pair has modulus^2 = e1^2 + p
    double modsq = r.e1 * r.e1 + p;
    r.beta = std::sqrt(std::max(0.0, modsq - r.alpha * r.alpha));
  }
  return r;
}

// Adaptive Simpson on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int depth, double fa, double fm,
                        double fb) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, tol / 2, depth - 1, fa, flm, fm) +
         adaptive_simpson(f, m, b, tol / 2, depth - 1, fm, frm, fb);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12) {
  double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, tol, 48, f(a), f(m), f(b));
}

void curve_coefficients(double I, double J, double* p, double* q) {
  *p = -I / 3.0;
  *q = -J / 27.0;
}

}  // namespace

double real_period_agm(double I, double J) {
  double p, q;
  curve_coefficients(I, J, &p, &q);
  auto r = solve_depressed_cubic(p, q);
  if (r.real_count == 3) {
    // Both real components carry the same period: the egg integral over
    // [e3, e2] reduces (via x = e3 + (e2 - e3) sin^2 phi) to the identical
    // complete elliptic integral as the unbounded component.
    return 2.0 * kPi / agm(std::sqrt(r.e1 - r.e3), std::sqrt(r.e1 - r.e2));
  }
  // substitute x = e1 + t^2: 2 * int_0^inf dt / sqrt((t^2 + u)^2 + beta^2)
  // with u = e1 - alpha; factoring over C and averaging conjugates turns the
  // complex AGM into a real one.
  double u = r.e1 - r.alpha;
  double c = std::hypot(u, r.beta);
  return kPi / agm(std::sqrt(c), std::sqrt((c + u) / 2.0));
}

double real_period_quadrature(double I, double J) {
  double p, q;
  curve_coefficients(I, J, &p, &q);
  auto r = solve_depressed_cubic(p, q);
  double total = 0;
  if (r.real_count == 3) {
    // egg [e3, e2]: x = e3 + (e2 - e3) sin^2(phi) removes both endpoint
    // singularities
    double d32 = r.e2 - r.e3, d13 = r.e1 - r.e3;
    total += integrate(
        [&](double phi) {
          double s = std::sin(phi);
          return 2.0 / std::sqrt(d13 - d32 * s * s);
        },
        0.0, kPi / 2);
    // unbounded [e1, inf): x = e1 + tan(th)^2
    double a = r.e1 - r.e2, b = r.e1 - r.e3;
    total += integrate(
        [&](double th) {
          double c = std::cos(th), s = std::sin(th);
          // 2 sec^2 / sqrt((tan^2+a)(tan^2+b)), rewritten stably
          double s2 = s * s;
          return 2.0 / std::sqrt((s2 + a * c * c) * (s2 + b * c * c));
        },
        0.0, kPi / 2);
  } else {
    double u = r.e1 - r.alpha, b2 = r.beta * r.beta;
    total += integrate(
        [&](double th) {
          double c = std::cos(th), s = std::sin(th);
          double s2 = s * s, c2 = c * c;
          double w = s2 + u * c2;
          return 2.0 / std::sqrt(w * w + b2 * c2 * c2);
        },
        0.0, kPi / 2);
  }
  return total;
}

PeriodValue real_period(double I, double J) {
  double d27 = 4 * I * I * I - J * J;
  if (d27 == 0.0)
    throw DegenerateDiscriminant("discriminant vanishes at (I, J)");
  double a = real_period_agm(I, J);
  double qd = real_period_quadrature(I, J);
  double err = std::abs(a - qd);
  if (!(std::isfinite(a) && std::isfinite(qd)) ||
      err > 1e-8 * std::max(1.0, std::abs(a)))
    throw NonConvergence("AGM and quadrature disagree near the singular locus");
  return {a, PeriodMethod::agm, err + 1e-14 * std::abs(a)};
}

PeriodValue omega_tilde(double I, double J) {
  auto a = real_period(I, J);
  auto b = real_period(I, -J);
  return {a.value + b.value, PeriodMethod::agm,
          a.error_estimate + b.error_estimate};
}

std::string real_period_digits(double I, double J, int digits) {
  const mpfr_prec_t prec =
      static_cast<mpfr_prec_t>(digits * 3.4) + 64;
  double pd, qd;
  curve_coefficients(I, J, &pd, &qd);
  auto rd = solve_depressed_cubic(pd, qd);

  mpfr_t p, q, x, fx, dfx, t1, t2, t3, a, b, m, acc;
  mpfr_inits2(prec, p, q, x, fx, dfx, t1, t2, t3, a, b, m, acc,
              static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(p, pd, MPFR_RNDN);
  mpfr_set_d(q, qd, MPFR_RNDN);

  auto refine_root = [&](double seed, mpfr_t out) {
    mpfr_set_d(out, seed, MPFR_RNDN);
    for (int i = 0; i < 200; ++i) {
      // Newton on x^3 + p x + q
      mpfr_mul(t1, out, out, MPFR_RNDN);
      mpfr_mul(fx, t1, out, MPFR_RNDN);
      mpfr_mul(t2, p, out, MPFR_RNDN);
      mpfr_add(fx, fx, t2, MPFR_RNDN);
      mpfr_add(fx, fx, q, MPFR_RNDN);
      mpfr_mul_ui(dfx, t1, 3, MPFR_RNDN);
      mpfr_add(dfx, dfx, p, MPFR_RNDN);
      mpfr_div(t3, fx, dfx, MPFR_RNDN);
      mpfr_sub(out, out, t3, MPFR_RNDN);
    }
  };

  auto agm_pi_over = [&](mpfr_t u, mpfr_t v) {
    // acc += pi / AGM(sqrt(u), sqrt(v))
    mpfr_sqrt(t1, u, MPFR_RNDN);
    mpfr_sqrt(t2, v, MPFR_RNDN);
    mpfr_agm(m, t1, t2, MPFR_RNDN);
    mpfr_const_pi(t3, MPFR_RNDN);
    mpfr_div(t3, t3, m, MPFR_RNDN);
    mpfr_add(acc, acc, t3, MPFR_RNDN);
  };

  mpfr_set_zero(acc, 1);
  if (rd.real_count == 3) {
    mpfr_t e1, e2, e3;
    mpfr_inits2(prec, e1, e2, e3, static_cast<mpfr_ptr>(nullptr));
    refine_root(rd.e1, e1);
    refine_root(rd.e2, e2);
    refine_root(rd.e3, e3);
    mpfr_sub(a, e1, e3, MPFR_RNDN);
    mpfr_sub(b, e1, e2, MPFR_RNDN);
    agm_pi_over(a, b);  // unbounded component
    agm_pi_over(a, b);  // egg component, same complete integral

    mpfr_clears(e1, e2, e3, static_cast<mpfr_ptr>(nullptr));
  } else {
    mpfr_t e1, u, c;
    mpfr_inits2(prec, e1, u, c, static_cast<mpfr_ptr>(nullptr));
    refine_root(rd.e1, e1);
    // u = e1 - alpha = 3 e1 / 2;  c^2 = u^2 + beta^2 = 3 e1^2 + p
    // (conjugate pair modulus^2 = e1^2 + p, alpha = -e1/2)
    mpfr_mul_ui(u, e1, 3, MPFR_RNDN);
    mpfr_div_ui(u, u, 2, MPFR_RNDN);
    mpfr_mul(t1, e1, e1, MPFR_RNDN);
    mpfr_mul_ui(t1, t1, 3, MPFR_RNDN);
    mpfr_add(t1, t1, p, MPFR_RNDN);
    mpfr_sqrt(c, t1, MPFR_RNDN);
    mpfr_add(t1, c, u, MPFR_RNDN);
    mpfr_div_ui(t1, t1, 2, MPFR_RNDN);
    mpfr_set(a, c, MPFR_RNDN);
    mpfr_set(b, t1, MPFR_RNDN);
    agm_pi_over(a, b);
    mpfr_clears(e1, u, c, static_cast<mpfr_ptr>(nullptr));
  }

  char buf[256];
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, acc);
  std::string out(buf);
  mpfr_clears(p, q, x, fx, dfx, t1, t2, t3, a, b, m, acc,
              static_cast<mpfr_ptr>(nullptr));
  return out;
}

// ---------------------------------------------------------------------------
// region constants

namespace {

// tanh-sinh nodes on (a, b); handles integrable endpoint singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int levels) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double prev = 0, cur = 0;
  for (int lvl = 2; lvl <= levels; ++lvl) {
    double h = 1.0 / static_cast<double>(1L << lvl);
    double sum = 0;
    // |t| <= 4 puts the nodes within ~1e-16 of the endpoints already;
    // recomputing the coarser nodes at each level keeps the loop simple
    const long jmax = 4L * (1L << lvl);
    for (long j = -jmax; j <= jmax; ++j) {
      double t = j * h;
      double u = 0.5 * kPi * std::sinh(t);
      double x = std::tanh(u);
      double w = 0.5 * kPi * std::cosh(t) / std::pow(std::cosh(u), 2);
      if (1.0 - std::abs(x) < 1e-15) continue;
      double v = f(mid + half * x);
      if (std::isfinite(v)) sum += w * v;
    }
    prev = cur;
    cur = sum * h * half;
    if (lvl > 4 && std::abs(cur - prev) < 1e-10 * std::abs(cur)) break;
  }
  return cur;
}

double omega_tilde_value(double I, double J) {
  return real_period_agm(I, J) + real_period_agm(I, -J);
}

// integrand of C34 over the positive-discriminant region, J scaled to
// J = 2 I^{3/2} s with s in (0,1); factor 2 for J < 0 by symmetry.
double c34_pos_quadrature(int levels) {
  return tanh_sinh(
      [&](double I) {
        double jmax = 2 * std::pow(I, 1.5);
        double inner = tanh_sinh(
            [&](double s) { return omega_tilde_value(I, jmax * s); }, 0.0, 1.0,
            levels);
        return 2.0 * jmax * inner;
      },
      0.0, 1.0, levels);
}

double c34_neg_quadrature(int levels) {
  // part A: I in (-1, 0), J in (0, 2), doubled for J < 0
  double partA = tanh_sinh(
      [&](double I) {
        double inner = tanh_sinh(
            [&](double J) { return omega_tilde_value(I, J); }, 0.0, 2.0,
            levels);
        return 2.0 * inner;
      },
      -1.0, 0.0, levels);
  // part B: I in (0, 1), J in (2 I^{3/2}, 2), doubled
  double partB = tanh_sinh(
      [&](double I) {
        double jmin = 2 * std::pow(I, 1.5);
        double inner = tanh_sinh(
            [&](double s) {
              return omega_tilde_value(I, jmin + (2.0 - jmin) * s);
            },
            0.0, 1.0, levels);
        return 2.0 * (2.0 - jmin) * inner;
      },
      0.0, 1.0, levels);
  return partA + partB;
}

// Stratified Monte Carlo over the box |I|<1, |J|<2 restricted to the sign
// region; deterministic per-stratum seeding makes the result independent of
// the thread count.
double c34_monte_carlo(bool positive, long samples, std::uint64_t seed,
                       bool parallel) {
  const int grid = 64;  // strata per axis
  const long per = std::max(1L, samples / (grid * grid));
  std::vector<double> strata(grid * grid, 0.0);
  auto run = [&](int idx) {
    int gi = idx / grid, gj = idx % grid;
    std::mt19937_64 gen(seed * 0x9e3779b97f4a7c15ULL + idx);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double i0 = -1.0 + 2.0 * gi / grid, di = 2.0 / grid;
    const double j0 = -2.0 + 4.0 * gj / grid, dj = 4.0 / grid;
    double acc = 0;
    for (long s = 0; s < per; ++s) {
      double I = i0 + di * uni(gen);
      double J = j0 + dj * uni(gen);
      double d = 4 * I * I * I - J * J;
      if (positive ? d <= 0 : d >= 0) continue;
      acc += omega_tilde_value(I, J);
    }
    strata[idx] = acc / per * (di * dj);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int idx = 0; idx < grid * grid; ++idx) run(idx);
  } else {
    for (int idx = 0; idx < grid * grid; ++idx) run(idx);
  }
  double total = 0;
  for (double v : strata) total += v;
  return total;
}

}  // namespace

std::string region_name(RegionName n) {
  switch (n) {
    case RegionName::C56_pos: return "C56_pos";
    case RegionName::C56_neg: return "C56_neg";
    case RegionName::C34_pos: return "C34_pos";
    default: return "C34_neg";
  }
}

RegionConstant region_constant(RegionName name, const RegionOptions& opt) {
  RegionConstant rc;
  rc.name = region_name(name);
  switch (name) {
    case RegionName::C56_pos: {
      // area of |J| < 2 I^{3/2}, 0 < I < 1: int 4 I^{3/2} dI = 8/5
      rc.value = 8.0 / 5.0;
      rc.method_a = "closed form";
      rc.value_b = integrate(
          [](double I) { return 4.0 * std::pow(I, 1.5); }, 0.0, 1.0);
      rc.method_b = "quadrature of section widths";
      break;
    }
    case RegionName::C56_neg: {
      rc.value = 32.0 / 5.0;
      rc.method_a = "closed form";
      rc.value_b = 8.0 - integrate([](double I) { return 4.0 * std::pow(I, 1.5); },
                                   0.0, 1.0);
      rc.method_b = "box area minus quadrature";
      break;
    }
    case RegionName::C34_pos: {
      rc.value = c34_pos_quadrature(opt.levels);
      rc.method_a = "tanh-sinh quadrature";
      rc.value_b = c34_monte_carlo(true, opt.mc_samples, opt.seed, opt.parallel);
      rc.method_b = "stratified Monte Carlo";
      break;
    }
    case RegionName::C34_neg: {
      rc.value = c34_neg_quadrature(opt.levels);
      rc.method_a = "tanh-sinh quadrature";
      rc.value_b =
          c34_monte_carlo(false, opt.mc_samples, opt.seed, opt.parallel);
      rc.method_b = "stratified Monte Carlo";
      break;
    }
  }
  rc.error_estimate = std::abs(rc.value - rc.value_b);
  return rc;
}

double zeta_half() {
  mpfr_t s, z;
  mpfr_inits2(256, s, z, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(s, 0.5, MPFR_RNDN);
  mpfr_zeta(z, s, MPFR_RNDN);
  double out = mpfr_get_d(z, MPFR_RNDN);
  mpfr_clears(s, z, static_cast<mpfr_ptr>(nullptr));
  return out;
}

double zeta_two() { return kPi * kPi / 6.0; }

}  // namespace qc
