#pragma once
// Quadratic Gauss sums, orbital exponential sums averaged over
// PGL2(Z/p^k Z), and pointwise Fourier transforms of functions on the space
// of binary quartic forms mod n, with helpers for empirical cancellation
// bounds.
#include "qc/forms.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qc {

// A binary quartic form with coefficients reduced mod n, (a,b,c,d,e) order.
using ModForm = std::array<long, 5>;
// 2x2 matrix [[m, n], [k, l]] stored row-major, acting on row vectors.
using Mat2 = std::array<long, 4>;

struct InfeasibleSize : std::runtime_error {
  explicit InfeasibleSize(const std::string& m) : std::runtime_error(m) {}
};

// Compensated (Kahan) accumulator; error stays far below 1e-9 for the sum
// lengths used here (up to ~10^9 terms of modulus <= 1).
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

struct ComplexAccumulator {
  KahanSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// The group PGL2(Z/p^k Z) = GL2 / scalars, one matrix per class.  The
// normalization scales the first unit entry (scan order m, n, k, l) to 1;
// every invertible matrix mod p^k has a unit entry.
struct ModularGroupTable {
  long p = 0, k = 0, n = 0;  // n = p^k
  std::vector<Mat2> elements;

  static ModularGroupTable build(long p, long k);
  // |PGL2(Z/p^k Z)| = p^{3(k-1)} * p * (p^2 - 1).
  static long cardinality(long p, long k);
};

// Visit every element of PGL2(Z/p^k Z) exactly once (normalized as above)
// without materializing the table.
void for_each_pgl2(long p, long k, const std::function<void(const Mat2&)>& fn);

inline Mat2 transpose(const Mat2& g) { return {g[0], g[2], g[1], g[3]}; }

// Determinant-twisted action mod n: coefficients of f((x,y) g) / det(g)^2.
// det(g) must be a unit mod n.
ModForm act_mod(const ModForm& f, const Mat2& g, long n);

// Plain coordinate pairing sum f_i h_i mod n.
long plain_pairing(const ModForm& f, const ModForm& h, long n);
// Invariant pairing f0 h0 + 4^-1 f1 h1 + 6^-1 f2 h2 + 4^-1 f3 h3 + f4 h4
// mod n; requires gcd(n, 6) = 1.  Satisfies [g f, h] = [f, g^T h] with the
// twisted action on both arguments.
long invariant_pairing(const ModForm& f, const ModForm& h, long n);

enum class Pairing { plain, invariant };

// disc(f) mod m computed exactly from the coefficients (valid for any m).
long disc_mod(const ModForm& f, long m);

// Quadratic Gauss sum averaged over units:
//   Q_{p^k}(a) = (1/|GL1|) sum_{t unit mod p^k} e(t^2 a / p^k).
std::complex<double> gauss_sum(long a, long p, long k);

// Orbital exponential sum
//   G_{p^k}(f, h) = (1/|GL1||PGL2|) sum_t sum_g e(t^2 [g f, h] / p^k)
//                 = (1/|PGL2|) sum_g Q_{p^k}([g f, h]).
// Uses the invariant pairing for p >= 5 and the plain pairing for p = 2, 3
// unless overridden.  Throws InfeasibleSize when |PGL2| * p^k exceeds the
// budget (~10^9 operations).
std::complex<double> orbital_sum(const ModForm& f, const ModForm& h, long p,
                                 long k, bool parallel = true);
std::complex<double> orbital_sum_with_pairing(const ModForm& f,
                                              const ModForm& h, long p, long k,
                                              Pairing pairing,
                                              bool parallel = true);

// Pointwise Fourier transform on forms mod n:
//   phi_hat(h) = (1/n^5) sum_f phi(f) e([f, h] / n)
// with the plain pairing by default.  Throws InfeasibleSize for n > 49.
std::complex<double> fourier_point(
    const std::function<double(const ModForm&)>& phi, const ModForm& h, long n,
    Pairing pairing = Pairing::plain, bool parallel = true);

// h-regimes of the cancellation bounds at level p^k: 0 -> h = 0,
// 1 -> h in p^{k-1} V* nonzero, 2 -> h outside p^{k-1} V*.
int dual_regime(const ModForm& h, long p, long k);
// Exponent s with bound |G| <= C * p^{-s} for the regime (0, 1/2 or 1).
double regime_exponent(int regime);

}  // namespace qc
