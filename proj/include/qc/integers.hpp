#pragma once
// Exact integer/rational helpers shared across the library.
#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

using Int = mpz_class;
using Rat = mpq_class;

struct FactorizationFailure : std::runtime_error {
  explicit FactorizationFailure(const std::string& m) : std::runtime_error(m) {}
};

// v_p(n) for n != 0; throws on n == 0.
inline int valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Int m = abs(n);
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

inline int valuation_ll(long long n, long long p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  if (n < 0) n = -n;
  int v = 0;
  while (n % p == 0) { n /= p; ++v; }
  return v;
}

// Perfect-square test; optionally returns the nonnegative root.
inline bool is_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    if (root) {
      Int r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      *root = r;
    }
    return true;
  }
  return false;
}

inline Int pow_int(const Int& b, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline long long pow_ll(long long b, unsigned e) {
  long long r = 1;
  while (e--) r *= b;
  return r;
}

// Modular arithmetic on uint64 moduli (p^k < 2^63) with 128-bit products.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  a += b;
  if (a >= m) a -= m;
  return a;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + m - b;
}
inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}
// Inverse of a unit mod m (m need not be prime); throws if not a unit.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

bool is_prime_u64(std::uint64_t n);

// Full factorization, smallest prime first.  Input must be nonzero; the sign
// is ignored and |n| = prod p^e.  Throws FactorizationFailure only if an
// internal iteration cap is exceeded (not expected at the sizes we handle).
std::vector<std::pair<Int, int>> factorize(const Int& n);

// All positive divisors of |n|.
std::vector<Int> divisors(const Int& n);

}  // namespace qc
