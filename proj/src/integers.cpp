#include "qc/integers.hpp"

#include <algorithm>
#include <numeric>

namespace qc {

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  // extended Euclid on signed 128-bit
  __int128 t = 0, newt = 1, r = m, newr = a % m;
  while (newr != 0) {
    __int128 q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw std::invalid_argument("not a unit");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
  // Brent's cycle variant; n odd composite, not a prime power issue handled by caller loop.
  for (std::uint64_t c = 1; c < 64; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto step = [&](std::uint64_t v) { return addmod(mulmod(v, v, n), c, n); };
    std::uint64_t iter = 0, cap = 1u << 26;
    while (d == 1 && ++iter < cap) {
      x = step(x);
      y = step(step(y));
      std::uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
  throw FactorizationFailure("pollard rho failed");
}

void factor_u64(std::uint64_t n, std::vector<std::pair<Int, int>>& out) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= n && p < 100000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) { primes.push_back(p); n /= p; }
  }
  std::vector<std::uint64_t> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    std::uint64_t m = stack.back();
    stack.pop_back();
    if (is_prime_u64(m)) {
      primes.push_back(m);
      continue;
    }
    std::uint64_t d = pollard_rho(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(primes.begin(), primes.end());
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    out.emplace_back(Int(static_cast<unsigned long>(primes[i])),
                     static_cast<int>(j - i));
    i = j;
  }
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(const Int& n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  Int m = abs(n);
  std::vector<std::pair<Int, int>> out;
  if (m == 1) return out;
  if (m.fits_ulong_p() || mpz_sizeinbase(m.get_mpz_t(), 2) <= 63) {
    std::uint64_t v = 0;
    Int u = m;
    int sh = 0;
    while (u > 0) {
      v |= static_cast<std::uint64_t>(mpz_get_ui(u.get_mpz_t()) & 0xffffffffull) << sh;
      u >>= 32;
      sh += 32;
    }
    factor_u64(v, out);
    return out;
  }
  // Large input: trial division then mpz-based rho.
  Int rem = m;
  for (std::uint64_t p = 2; p < 100000; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
        mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
        ++e;
      }
      out.emplace_back(Int(static_cast<unsigned long>(p)), e);
    }
    if (rem == 1) break;
  }
  std::vector<Int> stack;
  if (rem > 1) stack.push_back(rem);
  std::vector<Int> primes;
  gmp_randstate_t st;
  gmp_randinit_default(st);
  gmp_randseed_ui(st, 0x9e3779b9u);
  while (!stack.empty()) {
    Int v = stack.back();
    stack.pop_back();
    if (mpz_probab_prime_p(v.get_mpz_t(), 40)) {
      primes.push_back(v);
      continue;
    }
    // mpz Pollard rho
    bool split = false;
    for (unsigned c = 1; c < 40 && !split; ++c) {
      Int x = 2, y = 2, d = 1;
      long cap = 1 << 22;
      while (d == 1 && cap--) {
        x = (x * x + c) % v;
        y = (y * y + c) % v;
        y = (y * y + c) % v;
        Int diff = abs(x - y);
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), v.get_mpz_t());
      }
      if (d != 1 && d != v) {
        stack.push_back(d);
        stack.push_back(v / d);
        split = true;
      }
    }
    if (!split) {
      gmp_randclear(st);
      throw FactorizationFailure("cannot factor " + v.get_str());
    }
  }
  gmp_randclear(st);
  std::sort(primes.begin(), primes.end());
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    out.emplace_back(primes[i], static_cast<int>(j - i));
    i = j;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> divisors(const Int& n) {
  auto fac = factorize(n);
  std::vector<Int> out{1};
  for (auto& [p, e] : fac) {
    size_t sz = out.size();
    Int pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qc
