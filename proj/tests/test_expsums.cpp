#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qc/expsums.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace qc;
using C = std::complex<double>;

namespace {

std::mt19937_64 rng(20240821);

long powl_(long b, int e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

// --- independent oracles -------------------------------------------------

// Brute-force PGL2(Z/nZ): scan all matrices with unit determinant and keep
// the lexicographically smallest scalar multiple of each.
std::set<Mat2> pgl2_oracle(long p, int k) {
  const long n = powl_(p, k);
  std::set<Mat2> reps;
  for (long m = 0; m < n; ++m)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long l = 0; l < n; ++l) {
          long det = ((m * l - b * c) % n + n) % n;
          if (det % p == 0) continue;
          Mat2 best{n, n, n, n};
          for (long u = 1; u < n; ++u) {
            if (u % p == 0) continue;
            Mat2 s{u * m % n, u * b % n, u * c % n, u * l % n};
            if (s < best) best = s;
          }
          reps.insert(best);
        }
  return reps;
}

long inv_oracle(long a, long n) {
  a = ((a % n) + n) % n;
  for (long x = 1; x < n; ++x)
    if (a * x % n == 1) return x;
  throw std::runtime_error("not a unit");
}

long pairing_oracle(const ModForm& f, const ModForm& h, long n, Pairing pr) {
  long w1 = 1, w2 = 1;
  if (pr == Pairing::invariant) {
    w1 = inv_oracle(4, n);
    w2 = inv_oracle(6, n);
  }
  const long w[5] = {1, w1, w2, w1, 1};
  long s = 0;
  for (int i = 0; i < 5; ++i) s = (s + f[i] % n * (h[i] % n) % n * w[i]) % n;
  return s;
}

// Twisted action via the generic exact substitution from forms.hpp.
ModForm act_oracle(const ModForm& f, const Mat2& g, long n) {
  Quartic<long long> q{f[0], f[1], f[2], f[3], f[4]};
  auto s = substitute<long long>(q, g[0], g[1], g[2], g[3]);
  long long det = g[0] * g[3] - g[1] * g[2];
  long d2 = inv_oracle(det % n * (det % n) % n, n);
  auto red = [&](long long x) { return ((x % n) + n) % n * d2 % n; };
  return {static_cast<long>(red(s.a)), static_cast<long>(red(s.b)),
          static_cast<long>(red(s.c)), static_cast<long>(red(s.d)),
          static_cast<long>(red(s.e))};
}

// Direct double sum over units t and the brute-force group.
C orbital_oracle(const ModForm& f, const ModForm& h, long p, int k,
                 Pairing pr) {
  const long n = powl_(p, k);
  auto group = pgl2_oracle(p, k);
  C total = 0;
  long terms = 0;
  for (long t = 1; t < n; ++t) {
    if (t % p == 0) continue;
    for (const auto& g : group) {
      long a = t * t % n * pairing_oracle(act_oracle(f, g, n), h, n, pr) % n;
      double ang = 2.0 * std::numbers::pi * static_cast<double>(a) /
                   static_cast<double>(n);
      total += C{std::cos(ang), std::sin(ang)};
      ++terms;
    }
  }
  return total / static_cast<double>(terms);
}

ModForm random_modform(long n, bool nonzero_mod_p = false, long p = 0) {
  std::uniform_int_distribution<long> d(0, n - 1);
  for (;;) {
    ModForm f{d(rng), d(rng), d(rng), d(rng), d(rng)};
    if (!nonzero_mod_p) return f;
    for (int i = 0; i < 5; ++i)
      if (f[i] % p != 0) return f;
  }
}

}  // namespace

TEST_CASE("group table matches brute force and the closed-form cardinality") {
  for (auto [p, k] : std::vector<std::pair<long, int>>{
           {2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    auto table = ModularGroupTable::build(p, k);
    CHECK(static_cast<long>(table.elements.size()) ==
          ModularGroupTable::cardinality(p, k));
    // enumerated exactly once, normalized, invertible
    std::set<Mat2> seen(table.elements.begin(), table.elements.end());
    CHECK(seen.size() == table.elements.size());
    const long n = table.n;
    for (const auto& g : table.elements) {
      long det = ((g[0] * g[3] - g[1] * g[2]) % n + n) % n;
      CHECK(det % p != 0);
      // the first unit entry is 1
      for (int i = 0; i < 4; ++i) {
        if (g[i] % p != 0) {
          CHECK(g[i] == 1);
          break;
        }
      }
    }
    // same subgroup of scalar classes as the brute force
    auto brute = pgl2_oracle(p, k);
    CHECK(brute.size() == seen.size());
    std::set<Mat2> normalized;
    for (const auto& g : brute) {
      // rescale the brute rep so its first unit entry is 1
      long u = 0;
      for (int i = 0; i < 4; ++i)
        if (g[i] % p != 0) {
          u = inv_oracle(g[i], n);
          break;
        }
      normalized.insert(
          Mat2{u * g[0] % n, u * g[1] % n, u * g[2] % n, u * g[3] % n});
    }
    CHECK(normalized == seen);
  }
}

TEST_CASE("lazy group enumeration agrees with the table") {
  auto table = ModularGroupTable::build(5, 2);
  std::vector<Mat2> streamed;
  for_each_pgl2(5, 2, [&](const Mat2& g) { streamed.push_back(g); });
  CHECK(streamed == table.elements);
}

TEST_CASE("gauss sums: exact values") {
  CHECK(std::abs(gauss_sum(0, 5, 1) - C{1, 0}) < 1e-12);
  CHECK(std::abs(gauss_sum(0, 7, 2) - C{1, 0}) < 1e-12);
  // Q_5(1) = cos(2*pi/5) = (sqrt 5 - 1) / 4
  CHECK(std::abs(gauss_sum(1, 5, 1) - C{(std::sqrt(5.0) - 1.0) / 4.0, 0}) <
        1e-12);
  // independent direct summation oracle at p = 7, k = 2
  for (long a : {0L, 3L, 7L, 14L, 48L}) {
    C direct = 0;
    long units = 0;
    for (long t = 1; t < 49; ++t) {
      if (t % 7 == 0) continue;
      ++units;
      double ang = 2.0 * std::numbers::pi * (t * t % 49 * a % 49) / 49.0;
      direct += C{std::cos(ang), std::sin(ang)};
    }
    CHECK(std::abs(gauss_sum(a, 7, 2) - direct / double(units)) < 1e-12);
  }
}

TEST_CASE("gauss sums: three-regime magnitude profile, exhaustive") {
  double worst = 0;
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (int k : {1, 2}) {
      const long n = powl_(p, k);
      const long nk1 = powl_(p, k - 1);
      for (long a = 0; a < n; ++a) {
        double mag = std::abs(gauss_sum(a, p, k));
        if (a == 0) {
          CHECK(mag == doctest::Approx(1.0));
        } else if (a % nk1 == 0) {
          CHECK(mag * std::sqrt(double(p)) < 3.0);
          worst = std::max(worst, mag * std::sqrt(double(p)));
        } else {
          CHECK(mag * double(p) < 3.0);
          worst = std::max(worst, mag * double(p));
        }
      }
    }
  MESSAGE("max |Q| * p^regime over all tested (p,k,a): ", worst);
}

TEST_CASE("orbital sum at h = 0 is 1") {
  CHECK(std::abs(orbital_sum({1, 2, 3, 4, 5}, {0, 0, 0, 0, 0}, 5, 1) -
                 C{1, 0}) < 1e-12);
  CHECK(std::abs(orbital_sum({1, 0, 0, 0, 1}, {0, 0, 0, 0, 0}, 5, 2) -
                 C{1, 0}) < 1e-12);
}

TEST_CASE("orbital sum matches the naive double-sum oracle") {
  for (int i = 0; i < 4; ++i) {
    ModForm f = random_modform(3), h = random_modform(3);
    C fast = orbital_sum_with_pairing(f, h, 3, 1, Pairing::plain, false);
    CHECK(std::abs(fast - orbital_oracle(f, h, 3, 1, Pairing::plain)) < 1e-9);
  }
  for (int i = 0; i < 4; ++i) {
    ModForm f = random_modform(5), h = random_modform(5);
    C fast = orbital_sum(f, h, 5, 1, false);
    CHECK(std::abs(fast - orbital_oracle(f, h, 5, 1, Pairing::invariant)) <
          1e-9);
  }
  // one level-2 spot check
  ModForm f = random_modform(9), h = random_modform(9);
  C fast = orbital_sum_with_pairing(f, h, 3, 2, Pairing::plain, false);
  CHECK(std::abs(fast - orbital_oracle(f, h, 3, 2, Pairing::plain)) < 1e-9);
}

TEST_CASE("orbital sum is invariant under f -> gf and f -> t^2 f") {
  const long p = 5, n = 25;
  for (int i = 0; i < 3; ++i) {
    ModForm f = random_modform(n, true, p), h = random_modform(n);
    C base = orbital_sum(f, h, p, 2);
    Mat2 g{2, 3, 1, 3};  // det = 3, a unit mod 25
    CHECK(std::abs(orbital_sum(act_mod(f, g, n), h, p, 2) - base) < 1e-9);
    ModForm tf;
    const long t2 = 3 * 3 % n;
    for (int j = 0; j < 5; ++j) tf[j] = f[j] * t2 % n;
    CHECK(std::abs(orbital_sum(tf, h, p, 2) - base) < 1e-9);
  }
}

TEST_CASE("orbital sum: parallel kernel is bit-identical to serial") {
  ModForm f = random_modform(25, true, 5), h = random_modform(25);
  CHECK(orbital_sum(f, h, 5, 2, true) == orbital_sum(f, h, 5, 2, false));
}

TEST_CASE("orbital sum: cancellation regimes at p = 5, level 2") {
  ModForm f{1, 0, 0, 0, 1};  // not a multiple of 5
  for (int i = 0; i < 5; ++i) {
    ModForm h = random_modform(25);
    int r = dual_regime(h, 5, 2);
    double mag = std::abs(orbital_sum(f, h, 5, 2));
    CHECK(mag * std::pow(5.0, regime_exponent(r)) < 3.0);
  }
  // forced level-1 dual regime: h = 5 h' != 0
  ModForm h5{5, 10, 0, 20, 5};
  CHECK(dual_regime(h5, 5, 2) == 1);
  CHECK(std::abs(orbital_sum(f, h5, 5, 2)) * std::sqrt(5.0) < 3.0);
}

TEST_CASE("fourier: constant function transforms to a delta at 0") {
  auto one = [](const ModForm&) { return 1.0; };
  CHECK(std::abs(fourier_point(one, {0, 0, 0, 0, 0}, 5) - C{1, 0}) < 1e-12);
  CHECK(std::abs(fourier_point(one, {1, 2, 0, 3, 4}, 5)) < 1e-12);
}

TEST_CASE("fourier: Parseval at n = 3") {
  const long n = 3;
  std::vector<double> table(243);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : table) v = u(rng);
  auto idx = [n](const ModForm& f) {
    return ((f[0] * n + f[1]) * n + f[2]) * n * n + f[3] * n + f[4];
  };
  auto phi = [&](const ModForm& f) { return table[idx(f)]; };
  double lhs = 0;
  ModForm h{};
  for (h[0] = 0; h[0] < n; ++h[0])
    for (h[1] = 0; h[1] < n; ++h[1])
      for (h[2] = 0; h[2] < n; ++h[2])
        for (h[3] = 0; h[3] < n; ++h[3])
          for (h[4] = 0; h[4] < n; ++h[4])
            lhs += std::norm(fourier_point(phi, h, n));
  double rhs = 0;
  for (double v : table) rhs += v * v;
  CHECK(lhs * 243.0 == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("fourier: discriminant indicator at h = 0 is the exact density") {
  // chi(f) = 1 iff disc(f) = 0 mod p^2
  for (long p : {3L, 5L}) {
    const long n = p * p;
    auto chi = [n](const ModForm& f) {
      return disc_mod(f, n) == 0 ? 1.0 : 0.0;
    };
    // independent exact count via the generic invariant code path
    long count = 0, total = 0;
    ModForm f{};
    for (f[0] = 0; f[0] < n; ++f[0])
      for (f[1] = 0; f[1] < n; ++f[1])
        for (f[2] = 0; f[2] < n; ++f[2])
          for (f[3] = 0; f[3] < n; ++f[3])
            for (f[4] = 0; f[4] < n; ++f[4]) {
              QuarticForm q{f[0], f[1], f[2], f[3], f[4]};
              if (mpz_class(disc(q) % n) == 0) ++count;
              ++total;
            }
    C nu = fourier_point(chi, {0, 0, 0, 0, 0}, n);
    CHECK(nu.imag() == doctest::Approx(0.0));
    CHECK(nu.real() ==
          doctest::Approx(double(count) / double(total)).epsilon(1e-12));
    // p^2 * nu stays bounded (the indicator concentrates like p^-2)
    CHECK(double(p * p) * nu.real() < 8.0);
    MESSAGE("p=", p, "  p^2 * nu = ", double(p * p) * nu.real());
  }
}

TEST_CASE("fourier: transform of an invariant function is invariant") {
  const long n = 25;
  auto chi = [n](const ModForm& f) { return disc_mod(f, n) == 0 ? 1.0 : 0.0; };
  Mat2 g{2, 3, 1, 3};  // det = 3, unit mod 25
  for (int i = 0; i < 2; ++i) {
    ModForm h = random_modform(n);
    C a = fourier_point(chi, h, n, Pairing::invariant);
    C b = fourier_point(chi, act_mod(h, transpose(g), n), n,
                        Pairing::invariant);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("fourier: parallel kernel is bit-identical to serial") {
  const long n = 9;
  auto chi = [n](const ModForm& f) { return disc_mod(f, n) == 0 ? 1.0 : 0.0; };
  ModForm h{1, 4, 0, 2, 7};
  CHECK(fourier_point(chi, h, n, Pairing::plain, true) ==
        fourier_point(chi, h, n, Pairing::plain, false));
}

TEST_CASE("dual regimes") {
  CHECK(dual_regime({0, 0, 0, 0, 0}, 5, 2) == 0);
  CHECK(dual_regime({5, 0, 10, 0, 0}, 5, 2) == 1);
  CHECK(dual_regime({5, 1, 0, 0, 0}, 5, 2) == 2);
  CHECK(dual_regime({2, 0, 0, 0, 0}, 7, 1) == 1);  // level 1: any h != 0
  CHECK(regime_exponent(2) == 1.0);
}

TEST_CASE("infeasible sizes are rejected") {
  CHECK_THROWS_AS(orbital_sum({1, 0, 0, 0, 1}, {1, 0, 0, 0, 0}, 101, 2),
                  InfeasibleSize);
  auto one = [](const ModForm&) { return 1.0; };
  CHECK_THROWS_AS(fourier_point(one, {0, 0, 0, 0, 0}, 121), InfeasibleSize);
}
