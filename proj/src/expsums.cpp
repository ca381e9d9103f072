#include "qc/expsums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qc {

namespace {

using i64 = long;
using i128 = __int128;

i64 mod_reduce(i64 x, i64 n) {
  x %= n;
  if (x < 0) x += n;
  return x;
}

// Inverses of all units mod n (0 for non-units), by extended gcd per entry.
std::vector<i64> unit_inverse_table(i64 n) {
  std::vector<i64> inv(n, 0);
  for (i64 x = 1; x < n; ++x) {
    if (std::gcd(x, n) != 1) continue;
    inv[x] = static_cast<i64>(invmod(static_cast<std::uint64_t>(x),
                                     static_cast<std::uint64_t>(n)));
  }
  return inv;
}

// e(j / n) for j = 0..n-1.
std::vector<std::complex<double>> root_table(i64 n) {
  std::vector<std::complex<double>> e(n);
  for (i64 j = 0; j < n; ++j) {
    double ang = 2.0 * std::numbers::pi * static_cast<double>(j) /
                 static_cast<double>(n);
    e[j] = {std::cos(ang), std::sin(ang)};
  }
  return e;
}

// Coefficients of f((x,y) g) without the determinant twist, exact in 64-bit
// (valid while all inputs are < 2^13 or so; group work keeps them < p^2).
std::array<i64, 5> substitute_raw(const ModForm& f, const Mat2& g) {
  const i64 m = g[0], nn = g[1], k = g[2], l = g[3];
  std::array<std::array<i64, 5>, 5> up{}, vp{};
  up[0][0] = 1;
  vp[0][0] = 1;
  for (int r = 1; r <= 4; ++r) {
    for (int i = 0; i < r; ++i) {
      up[r][i] += up[r - 1][i] * m;
      up[r][i + 1] += up[r - 1][i] * k;
      vp[r][i] += vp[r - 1][i] * nn;
      vp[r][i + 1] += vp[r - 1][i] * l;
    }
  }
  std::array<i64, 5> out{};
  for (int j = 0; j <= 4; ++j) {
    if (f[j] == 0) continue;
    for (int r = 0; r <= 4 - j; ++r) {
      if (up[4 - j][r] == 0) continue;
      const i64 t = f[j] * up[4 - j][r];
      for (int s = 0; s <= j; ++s) out[r + s] += t * vp[j][s];
    }
  }
  return out;
}

struct PairingWeights {
  std::array<i64, 5> w{};  // pairing(f, h) = sum f_i * w_i mod n
};

PairingWeights make_weights(const ModForm& h, i64 n, Pairing pairing) {
  PairingWeights pw;
  if (pairing == Pairing::plain) {
    for (int i = 0; i < 5; ++i) pw.w[i] = mod_reduce(h[i], n);
    return pw;
  }
  if (std::gcd<i64>(n, 6) != 1)
    throw std::invalid_argument("invariant pairing needs gcd(n, 6) = 1");
  const i64 i4 = static_cast<i64>(invmod(4 % n, n));
  const i64 i6 = static_cast<i64>(invmod(6 % n, n));
  const i64 mult[5] = {1, i4, i6, i4, 1};
  for (int i = 0; i < 5; ++i) pw.w[i] = mult[i] * mod_reduce(h[i], n) % n;
  return pw;
}

Pairing default_pairing(long p) {
  return p >= 5 ? Pairing::invariant : Pairing::plain;
}

}  // namespace

long ModularGroupTable::cardinality(long p, long k) {
  long c = p * (p * p - 1);
  for (long i = 0; i < 3 * (k - 1); ++i) c *= p;
  return c;
}

void for_each_pgl2(long p, long k,
                   const std::function<void(const Mat2&)>& fn) {
  const i64 n = pow_ll(p, static_cast<unsigned>(k));
  const i64 nk1 = pow_ll(p, static_cast<unsigned>(k - 1));
  // Every invertible matrix mod p^k has a unit entry; scaling the first one
  // (scan order m, n, k, l) to 1 picks one matrix per scalar class.  If both
  // m and n are divisible by p the determinant is too, so two cases remain.
  // Case m = 1: n', k' free, l with det = l - n' k' a unit.
  for (i64 b = 0; b < n; ++b)
    for (i64 c = 0; c < n; ++c) {
      const i64 bc = b * c % n;
      for (i64 l = 0; l < n; ++l) {
        if ((l - bc) % p == 0) continue;
        fn(Mat2{1, b, c, l});
      }
    }
  // Case p | m, n = 1: m = p a', l free, k' with det = m l - k' a unit.
  for (i64 a = 0; a < nk1; ++a) {
    const i64 m = p * a;
    for (i64 l = 0; l < n; ++l) {
      const i64 ml = m * l % n;
      for (i64 c = 0; c < n; ++c) {
        if ((ml - c) % p == 0) continue;
        fn(Mat2{m, 1, c, l});
      }
    }
  }
}

ModularGroupTable ModularGroupTable::build(long p, long k) {
  ModularGroupTable t;
  t.p = p;
  t.k = k;
  t.n = pow_ll(p, static_cast<unsigned>(k));
  t.elements.reserve(static_cast<std::size_t>(cardinality(p, k)));
  for_each_pgl2(p, k, [&](const Mat2& g) { t.elements.push_back(g); });
  return t;
}

ModForm act_mod(const ModForm& f, const Mat2& g, long n) {
  ModForm fr;
  for (int i = 0; i < 5; ++i) fr[i] = mod_reduce(f[i], n);
  Mat2 gm;
  for (int i = 0; i < 4; ++i) gm[i] = mod_reduce(g[i], n);
  const i64 det = mod_reduce(gm[0] * gm[3] - gm[1] * gm[2], n);
  const i64 dinv = static_cast<i64>(invmod(det, n));  // throws if not a unit
  const i64 d2 = dinv * dinv % n;
  auto raw = substitute_raw(fr, gm);
  ModForm out;
  for (int i = 0; i < 5; ++i) out[i] = mod_reduce(raw[i], n) * d2 % n;
  return out;
}

long plain_pairing(const ModForm& f, const ModForm& h, long n) {
  i64 s = 0;
  for (int i = 0; i < 5; ++i)
    s = (s + mod_reduce(f[i], n) * mod_reduce(h[i], n)) % n;
  return s;
}

long invariant_pairing(const ModForm& f, const ModForm& h, long n) {
  auto pw = make_weights(h, n, Pairing::invariant);
  i64 s = 0;
  for (int i = 0; i < 5; ++i) s = (s + mod_reduce(f[i], n) * pw.w[i]) % n;
  return s;
}

long disc_mod(const ModForm& f, long m) {
  ModForm r;
  for (int i = 0; i < 5; ++i) r[i] = mod_reduce(f[i], m);
  const i64 a = r[0], b = r[1], c = r[2], d = r[3], e = r[4];
  const i128 I = 12 * static_cast<i128>(a) * e - 3 * static_cast<i128>(b) * d +
                 static_cast<i128>(c) * c;
  const i128 J = 72 * static_cast<i128>(a) * c * e +
                 9 * static_cast<i128>(b) * c * d -
                 27 * static_cast<i128>(a) * d * d -
                 27 * static_cast<i128>(e) * b * b -
                 2 * static_cast<i128>(c) * c * c;
  const i128 disc27 = 4 * I * I * I - J * J;  // 27 * disc, exactly divisible
  i128 disc = disc27 / 27;
  i128 red = disc % m;
  if (red < 0) red += m;
  return static_cast<i64>(red);
}

std::complex<double> gauss_sum(long a, long p, long k) {
  const i64 n = pow_ll(p, static_cast<unsigned>(k));
  const auto e = root_table(n);
  const i64 ar = mod_reduce(a, n);
  ComplexAccumulator acc;
  i64 units = 0;
  for (i64 t = 0; t < n; ++t) {
    if (t % p == 0) continue;
    ++units;
    acc.add(e[t * t % n * ar % n]);
  }
  auto z = acc.value();
  return z / static_cast<double>(units);
}

std::complex<double> orbital_sum_with_pairing(const ModForm& f,
                                              const ModForm& h, long p, long k,
                                              Pairing pairing, bool parallel) {
  const i64 n = pow_ll(p, static_cast<unsigned>(k));
  const i64 card = ModularGroupTable::cardinality(p, k);
  if (card > 600000000L)
    throw InfeasibleSize("PGL2 level too large for direct summation");
  const i64 nk1 = pow_ll(p, static_cast<unsigned>(k - 1));

  ModForm fr;
  for (int i = 0; i < 5; ++i) fr[i] = mod_reduce(f[i], n);
  const auto pw = make_weights(h, n, pairing);
  const auto inv = unit_inverse_table(n);

  // Q_{p^k}(a) for every a mod n.
  std::vector<std::complex<double>> Q(n);
  for (i64 a = 0; a < n; ++a) Q[a] = gauss_sum(a, p, k);

  // Chunk c handles case m = 1 with n' = c and case n = 1 with l = c; the
  // partial sums are merged in chunk order so parallel and serial runs are
  // bit-identical.
  auto run_chunk = [&](i64 cidx) {
    ComplexAccumulator acc;
    auto visit = [&](const Mat2& g) {
      const i64 det = mod_reduce(g[0] * g[3] - g[1] * g[2], n);
      const i64 dinv = inv[det];
      const i64 d2 = dinv * dinv % n;
      const auto raw = substitute_raw(fr, g);
      i64 s = 0;
      for (int i = 0; i < 5; ++i) s += mod_reduce(raw[i], n) * pw.w[i] % n;
      acc.add(Q[s % n * d2 % n]);
    };
    {
      const i64 b = cidx;
      for (i64 c = 0; c < n; ++c) {
        const i64 bc = b * c % n;
        for (i64 l = 0; l < n; ++l) {
          if ((l - bc) % p == 0) continue;
          visit(Mat2{1, b, c, l});
        }
      }
    }
    {
      const i64 l = cidx;
      for (i64 a = 0; a < nk1; ++a) {
        const i64 m = p * a;
        const i64 ml = m * l % n;
        for (i64 c = 0; c < n; ++c) {
          if ((ml - c) % p == 0) continue;
          visit(Mat2{m, 1, c, l});
        }
      }
    }
    return acc.value();
  };

  std::vector<std::complex<double>> partial(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 c = 0; c < n; ++c) partial[c] = run_chunk(c);
  } else {
    for (i64 c = 0; c < n; ++c) partial[c] = run_chunk(c);
  }
  ComplexAccumulator total;
  for (i64 c = 0; c < n; ++c) total.add(partial[c]);
  // The pairing value was accumulated pre-twist as [raw, w]; the twist
  // multiplies it by det^-2, applied inside visit via d2 before lookup.
  return total.value() / static_cast<double>(card);
}

std::complex<double> orbital_sum(const ModForm& f, const ModForm& h, long p,
                                 long k, bool parallel) {
  return orbital_sum_with_pairing(f, h, p, k, default_pairing(p), parallel);
}

std::complex<double> fourier_point(
    const std::function<double(const ModForm&)>& phi, const ModForm& h, long n,
    Pairing pairing, bool parallel) {
  if (n > 49) throw InfeasibleSize("n^5 points exceed the direct budget");
  const auto pw = make_weights(h, n, pairing);
  const auto e = root_table(n);
  const double n5 = std::pow(static_cast<double>(n), 5.0);

  auto run_chunk = [&](i64 f0) {
    ComplexAccumulator acc;
    ModForm f{f0, 0, 0, 0, 0};
    const i64 s0 = f0 * pw.w[0] % n;
    for (f[1] = 0; f[1] < n; ++f[1]) {
      const i64 s1 = (s0 + f[1] * pw.w[1]) % n;
      for (f[2] = 0; f[2] < n; ++f[2]) {
        const i64 s2 = (s1 + f[2] * pw.w[2]) % n;
        for (f[3] = 0; f[3] < n; ++f[3]) {
          const i64 s3 = (s2 + f[3] * pw.w[3]) % n;
          for (f[4] = 0; f[4] < n; ++f[4]) {
            const double v = phi(f);
            if (v == 0.0) continue;
            acc.add(v * e[(s3 + f[4] * pw.w[4]) % n]);
          }
        }
      }
    }
    return acc.value();
  };

  std::vector<std::complex<double>> partial(n);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 f0 = 0; f0 < n; ++f0) partial[f0] = run_chunk(f0);
  } else {
    for (i64 f0 = 0; f0 < n; ++f0) partial[f0] = run_chunk(f0);
  }
  ComplexAccumulator total;
  for (i64 f0 = 0; f0 < n; ++f0) total.add(partial[f0]);
  return total.value() / n5;
}

int dual_regime(const ModForm& h, long p, long k) {
  const i64 n = pow_ll(p, static_cast<unsigned>(k));
  const i64 nk1 = pow_ll(p, static_cast<unsigned>(k - 1));
  bool zero = true, in_pk1 = true;
  for (int i = 0; i < 5; ++i) {
    const i64 r = mod_reduce(h[i], n);
    if (r != 0) zero = false;
    if (r % nk1 != 0) in_pk1 = false;
  }
  if (zero) return 0;
  return in_pk1 ? 1 : 2;
}

double regime_exponent(int regime) {
  switch (regime) {
    case 0: return 0.0;
    case 1: return 0.5;
    default: return 1.0;
  }
}

}  // namespace qc
