#include "qc/localp.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cassert>
#include <sstream>

namespace qc {

// ---------------------------------------------------------------------------
// small polynomials over F_p (degree <= 8 scratch), coefficients uint64
// ---------------------------------------------------------------------------

namespace {

using u64 = std::uint64_t;
using P8 = std::array<u64, 9>;  // c[i] = coefficient of x^i

int pdeg(const P8& a) {
  for (int i = 8; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

P8 pzero() { return P8{}; }

P8 monic(const P8& a, u64 p) {
  int d = pdeg(a);
  P8 r{};
  if (d < 0) return r;
  u64 inv = invmod(a[d], p);
  for (int i = 0; i <= d; ++i) r[i] = mulmod(a[i], inv, p);
  return r;
}

// remainder of a mod b (b nonzero)
P8 prem(P8 a, const P8& b, u64 p) {
  int db = pdeg(b);
  u64 invl = invmod(b[db], p);
  for (int da = pdeg(a); da >= db; da = pdeg(a)) {
    u64 q = mulmod(a[da], invl, p);
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = submod(a[da - db + i], mulmod(q, b[i], p), p);
    a[da] = 0;  // guard against residue
  }
  return a;
}

P8 pquo(P8 a, const P8& b, u64 p) {
  int db = pdeg(b);
  u64 invl = invmod(b[db], p);
  P8 q{};
  for (int da = pdeg(a); da >= db; da = pdeg(a)) {
    u64 t = mulmod(a[da], invl, p);
    q[da - db] = t;
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = submod(a[da - db + i], mulmod(t, b[i], p), p);
    a[da] = 0;
  }
  return q;
}

P8 pgcd(P8 a, P8 b, u64 p) {
  while (pdeg(b) >= 0) {
    P8 r = prem(a, b, p);
    a = b;
    b = r;
  }
  return pdeg(a) >= 0 ? monic(a, p) : a;
}

P8 pmulmod(const P8& a, const P8& b, const P8& m, u64 p) {
  P8 r{};
  int da = pdeg(a), db = pdeg(b);
  for (int i = 0; i <= da; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j <= db; ++j)
      r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
  }
  return prem(r, m, p);
}

P8 pderiv(const P8& a, u64 p) {
  P8 r{};
  for (int i = 1; i <= 8; ++i) r[i - 1] = mulmod(a[i], i % p, p);
  return r;
}

u64 peval(const P8& a, u64 x, u64 p) {
  u64 v = 0;
  for (int i = pdeg(a); i >= 0; --i) v = addmod(mulmod(v, x, p), a[i], p);
  return v;
}

// b^e mod m where b is a polynomial, e a u64 exponent
P8 ppowmod(P8 b, u64 e, const P8& m, u64 p) {
  P8 r{};
  r[0] = 1;
  b = prem(b, m, p);
  while (e) {
    if (e & 1) r = pmulmod(r, b, m, p);
    b = pmulmod(b, b, m, p);
    e >>= 1;
  }
  return r;
}

P8 psub(const P8& a, const P8& b, u64 p) {
  P8 r{};
  for (int i = 0; i <= 8; ++i) r[i] = submod(a[i], b[i], p);
  return r;
}

// degree profile (degree, multiplicity count handled by caller) of a
// squarefree monic polynomial of degree <= 4 via distinct-degree splitting
void profile_squarefree(const P8& A, u64 p, int mult,
                        std::vector<std::pair<int, int>>& parts) {
  int n = pdeg(A);
  if (n <= 0) return;
  P8 x{};
  x[1] = 1;
  P8 t = ppowmod(x, p, A, p);          // x^p mod A
  P8 g1 = pgcd(psub(t, x, p), A, p);   // product of linear factors
  int nlin = pdeg(g1);
  for (int i = 0; i < nlin; ++i) parts.emplace_back(1, mult);
  P8 A1 = (nlin > 0) ? pquo(A, g1, p) : A;
  int m = pdeg(A1);
  if (m == 2) parts.emplace_back(2, mult);
  else if (m == 3) parts.emplace_back(3, mult);
  else if (m == 4) {
    P8 r = ppowmod(x, p, A1, p);
    P8 r2 = ppowmod(r, p, A1, p);  // x^(p^2) mod A1
    P8 g2 = pgcd(psub(r2, x, p), A1, p);
    if (pdeg(g2) == 4) {
      parts.emplace_back(2, mult);
      parts.emplace_back(2, mult);
    } else {
      parts.emplace_back(4, mult);
    }
  }
}

// irreducible monic polynomials of degree 1..4 over F_p, for tiny p
const std::vector<P8>& small_irreducibles(u64 p) {
  static std::map<u64, std::vector<P8>> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  std::vector<P8> irr;
  for (int d = 1; d <= 4; ++d) {
    u64 count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (u64 code = 0; code < count; ++code) {
      P8 f{};
      u64 c = code;
      for (int i = 0; i < d; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[d] = 1;
      bool red = false;
      for (const P8& g : irr) {
        if (2 * pdeg(g) > d) break;  // sorted by degree
        if (pdeg(prem(f, g, p)) < 0) {
          red = true;
          break;
        }
      }
      if (!red) irr.push_back(f);
    }
  }
  return cache.emplace(p, std::move(irr)).first->second;
}

// full multiplicity-aware degree profile of a monic polynomial, deg <= 4
void factor_degrees(P8 u, u64 p, std::vector<std::pair<int, int>>& parts) {
  int n = pdeg(u);
  if (n <= 0) return;
  if (p <= 3) {
    for (const P8& g : small_irreducibles(p)) {
      int mult = 0;
      while (pdeg(u) >= pdeg(g) && pdeg(prem(u, g, p)) < 0) {
        u = pquo(u, g, p);
        ++mult;
      }
      if (mult) parts.emplace_back(pdeg(g), mult);
      if (pdeg(u) <= 0) break;
    }
    return;
  }
  // Yun squarefree decomposition (valid since p > deg u)
  P8 du = pderiv(u, p);
  P8 c = pgcd(u, du, p);
  if (pdeg(c) <= 0) {
    profile_squarefree(u, p, 1, parts);
    return;
  }
  P8 w = pquo(u, c, p);
  P8 y = pquo(du, c, p);
  P8 z = psub(y, pderiv(w, p), p);
  int i = 1;
  while (pdeg(w) > 0) {
    P8 ai = pgcd(w, z, p);
    if (pdeg(ai) > 0) profile_squarefree(ai, p, i, parts);
    w = pquo(w, ai, p);
    y = pquo(z, ai, p);
    z = psub(y, pderiv(w, p), p);
    ++i;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// splitting types
// ---------------------------------------------------------------------------

int SplittingType::index() const {
  int s = 0;
  for (auto& [d, m] : parts) s += (m - 1) * d;
  return s;
}

bool SplittingType::has_multiple_factor() const {
  for (auto& [d, m] : parts)
    if (m > 1) return true;
  return false;
}

std::string SplittingType::name() const {
  if (zero) return "(0)";
  auto sorted = parts;
  std::sort(sorted.begin(), sorted.end(), [](auto& x, auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  std::ostringstream o;
  o << "(";
  for (auto& [d, m] : sorted) {
    o << d;
    if (m > 1) o << "^" << m;
  }
  o << ")";
  return o.str();
}

SplittingType splitting_type_mod(const u64 co[5], u64 p) {
  SplittingType t;
  P8 u{};
  // co = (a,b,c,d,e); u(x) = f(x,1) = a x^4 + b x^3 + c x^2 + d x + e
  u[4] = co[0] % p;
  u[3] = co[1] % p;
  u[2] = co[2] % p;
  u[1] = co[3] % p;
  u[0] = co[4] % p;
  int n = pdeg(u);
  if (n < 0) {
    t.zero = true;
    return t;
  }
  if (n < 4) t.parts.emplace_back(1, 4 - n);  // root at infinity
  factor_degrees(monic(u, p), p, t.parts);
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

SplittingType splitting_type(const QuarticForm& f, u64 p) {
  u64 co[5];
  const Int* cs[5] = {&f.a, &f.b, &f.c, &f.d, &f.e};
  for (int i = 0; i < 5; ++i)
    co[i] = mpz_fdiv_ui(cs[i]->get_mpz_t(), static_cast<unsigned long>(p));
  return splitting_type_mod(co, p);
}

std::vector<std::pair<u64, u64>> multiple_roots_modp(const u64 co[5], u64 p) {
  std::vector<std::pair<u64, u64>> out;
  P8 u{};
  u[4] = co[0] % p;
  u[3] = co[1] % p;
  u[2] = co[2] % p;
  u[1] = co[3] % p;
  u[0] = co[4] % p;
  int n = pdeg(u);
  if (n < 0) return out;  // zero form: caller handles
  if (4 - n >= 2) out.emplace_back(1, 0);  // multiple root at infinity
  P8 du = pderiv(u, p);
  for (u64 x = 0; x < p; ++x)
    if (peval(u, x, p) == 0 && peval(du, x, p) == 0) out.emplace_back(x, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Table-style closed-form densities
// ---------------------------------------------------------------------------

namespace {
Rat rat(const Int& n, const Int& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}
}  // namespace

Rat density_splitting(const std::string& s, u64 p_) {
  Int p(static_cast<unsigned long>(p_));
  Int p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p;
  Int q = p - 1, r = p + 1;
  if (s == "(1111)") return rat(r * q * q * (p - 2), 24 * p4);
  if (s == "(112)") return rat(r * q * q, 4 * p3);
  if (s == "(13)") return rat(r * r * q * q, 3 * p4);
  if (s == "(22)") return rat(q * q * r * (p - 2), 8 * p4);
  if (s == "(4)") return rat(r * q * q, 4 * p3);
  if (s == "(1^211)") return rat(r * q * q, 2 * p4);
  if (s == "(1^22)") return rat(r * q * q, 2 * p4);
  if (s == "(1^31)") return rat(r * q, p4);
  if (s == "(1^21^2)") return rat(r * q, 2 * p4);
  if (s == "(2^2)") return rat(q * q, 2 * p4);
  if (s == "(1^4)") return rat(r * q, p5);
  if (s == "(0)") return rat(1, p5);
  throw std::invalid_argument("unknown splitting type " + s);
}

std::map<std::string, Rat> splitting_density_bruteforce(u64 p, bool parallel) {
  const long P = static_cast<long>(p);
  std::map<std::string, long> counts;
  long total = P * P * P * P * P;
  // chunk over the leading coefficient for deterministic merge
  std::vector<std::map<std::string, long>> partial(P);
  auto run_chunk = [&](long a) {
    std::map<std::string, long> local;
    u64 co[5];
    co[0] = static_cast<u64>(a);
    for (long b = 0; b < P; ++b)
      for (long c = 0; c < P; ++c)
        for (long d = 0; d < P; ++d)
          for (long e = 0; e < P; ++e) {
            co[1] = b;
            co[2] = c;
            co[3] = d;
            co[4] = e;
            ++local[splitting_type_mod(co, p).name()];
          }
    partial[a] = std::move(local);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long a = 0; a < P; ++a) run_chunk(a);
  } else {
    for (long a = 0; a < P; ++a) run_chunk(a);
  }
  for (long a = 0; a < P; ++a)
    for (auto& [k, v] : partial[a]) counts[k] += v;
  std::map<std::string, Rat> out;
  long sum = 0;
  for (auto& [k, v] : counts) {
    out[k] = rat(v, total);
    sum += v;
  }
  assert(sum == total);
  return out;
}

bool is_resolvent_maximal_at(const QuarticForm& f, u64 p) {
  SplittingType t = splitting_type(f, p);
  std::string n = t.name();
  if (n == "(0)" || n == "(1^21^2)" || n == "(2^2)" || n == "(1^4)") return false;
  if (!t.has_multiple_factor()) return true;
  u64 co[5];
  const Int* cs[5] = {&f.a, &f.b, &f.c, &f.d, &f.e};
  for (int i = 0; i < 5; ++i)
    co[i] = mpz_fdiv_ui(cs[i]->get_mpz_t(), static_cast<unsigned long>(p));
  Int p2 = Int(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
  for (auto& [x0, y0] : multiple_roots_modp(co, p)) {
    Int x(static_cast<unsigned long>(x0)), y(static_cast<unsigned long>(y0));
    Int val = f.a * x * x * x * x + f.b * x * x * x * y + f.c * x * x * y * y +
              f.d * x * y * y * y + f.e * y * y * y * y;
    if (mpz_divisible_p(val.get_mpz_t(), p2.get_mpz_t())) return false;
  }
  return true;
}

Rat density_slice(const std::string& row, u64 p_, int k) {
  Int p(static_cast<unsigned long>(p_));
  Int p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  Int q = p - 1, r = p + 1;
  int col = std::min(k, 2);
  auto pick = [&](Rat v0, Rat v1, Rat v2) {
    return col == 0 ? v0 : (col == 1 ? v1 : v2);
  };
  if (row == "(1111)") {
    Rat deep = rat(q * q * (p - 2), 6 * p3);
    return pick(rat(q * (p - 2) * (p - 3), 24 * p3), deep, deep);
  }
  if (row == "(112)") {
    Rat deep = rat(q * q, 2 * p2);
    return pick(rat(q * q, 4 * p2), deep, deep);
  }
  if (row == "(13)") {
    Rat deep = rat(r * q * q, 3 * p3);
    return pick(rat(r * q, 3 * p2), deep, deep);
  }
  if (row == "(22)") return pick(rat(q * (p2 - p - 2), 8 * p3), Rat(0), Rat(0));
  if (row == "(4)") return pick(rat(r * q, 4 * p2), Rat(0), Rat(0));
  if (row == "(1^211)") {
    Rat deep = rat(3 * q * q, 2 * p3);
    return pick(rat(q * (p - 2), 2 * p3), deep, deep);
  }
  if (row == "(1^22)") {
    Rat deep = rat(q * q, 2 * p3);
    return pick(rat(q, 2 * p2), deep, deep);
  }
  if (row == "(1^31)") {
    Rat deep = rat(2 * q, p3);
    return pick(rat(q, p3), deep, deep);
  }
  if (row == "max:(1^211)")
    return pick(rat(q * q * (p - 2), 2 * p4), rat((3 * p - 2) * q * q, 2 * p4),
                rat(q * q * q, p4));
  if (row == "max:(1^22)")
    // (p-1)/(2p^2) of the slice has this splitting type; the double root is
    // maximal with probability (p-1)/p, matching exhaustive counting.
    return pick(rat(q * q, 2 * p3), rat(q * q, 2 * p3), Rat(0));
  if (row == "max:(1^31)")
    return pick(rat(q * q, p4), rat((2 * p - 1) * q, p4), rat(q * q, p4));
  if (row == "(1^21^2)") {
    Rat deep = rat(q, p3);
    return pick(rat(q, 2 * p3), deep, deep);
  }
  if (row == "(2^2)") return pick(rat(q, 2 * p3), Rat(0), Rat(0));
  if (row == "(1^4)") {
    Rat deep = rat(q, p4);
    return pick(rat(1, p3), deep, deep);
  }
  throw std::invalid_argument("unknown slice row " + row);
}

std::map<std::string, Rat> slice_density_bruteforce(u64 p, int k, bool parallel,
                                                    u64 unit) {
  const long P = static_cast<long>(p);
  const u64 p2 = p * p;
  // leading coefficient a = p^k * unit, reduced mod p^2
  u64 a2 = unit % p2;
  for (int i = 0; i < k; ++i) a2 = mulmod(a2, p, p2);
  const u64 a1 = a2 % p;
  const Int total = pow_int(Int(static_cast<unsigned long>(p)), 8);

  struct Acc {
    std::map<std::string, long long> cnt;
  };
  std::vector<Acc> partial(P);

  auto run_chunk = [&](long b0) {
    Acc acc;
    u64 co[5];
    co[0] = a1;
    co[1] = static_cast<u64>(b0);
    for (long c0 = 0; c0 < P; ++c0)
      for (long d0 = 0; d0 < P; ++d0)
        for (long e0 = 0; e0 < P; ++e0) {
          co[2] = c0;
          co[3] = d0;
          co[4] = e0;
          SplittingType t = splitting_type_mod(co, p);
          std::string nm = t.name();
          long long lifts = static_cast<long long>(p) * p * p * p;  // p^4 lifts mod p^2
          acc.cnt[nm] += lifts;
          bool maxrow = (nm == "(1^211)" || nm == "(1^22)" || nm == "(1^31)");
          if (!maxrow) continue;
          // count lifts (b1,c1,d1,e1) mod p keeping every multiple root
          // r with p^2 not dividing f(r~)
          auto roots = multiple_roots_modp(co, p);
          bool inf_bad = false;
          std::vector<u64> finite;
          for (auto& [x0, y0] : roots) {
            if (y0 == 0) {
              if (a2 % p2 == 0) inf_bad = true;  // p^2 | a
            } else {
              finite.push_back(x0);
            }
          }
          long long mcount = 0;
          if (!inf_bad) {
            if (finite.empty()) {
              mcount = lifts;
            } else {
              for (u64 b1 = 0; b1 < p; ++b1)
                for (u64 c1 = 0; c1 < p; ++c1)
                  for (u64 d1 = 0; d1 < p; ++d1)
                    for (u64 e1 = 0; e1 < p; ++e1) {
                      u64 B = (co[1] + b1 * p) % p2, C = (co[2] + c1 * p) % p2,
                          D = (co[3] + d1 * p) % p2, E = (co[4] + e1 * p) % p2;
                      bool ok = true;
                      for (u64 x : finite) {
                        u64 v = a2;
                        for (u64 cf : {B, C, D, E})
                          v = addmod(mulmod(v, x, p2), cf, p2);
                        if (v == 0) {
                          ok = false;
                          break;
                        }
                      }
                      if (ok) ++mcount;
                    }
            }
          }
          acc.cnt["max:" + nm] += mcount;
        }
    partial[b0] = std::move(acc);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long b0 = 0; b0 < P; ++b0) run_chunk(b0);
  } else {
    for (long b0 = 0; b0 < P; ++b0) run_chunk(b0);
  }
  std::map<std::string, long long> counts;
  for (long b0 = 0; b0 < P; ++b0)
    for (auto& [key, v] : partial[b0].cnt) counts[key] += v;
  std::map<std::string, Rat> out;
  for (auto& [key, v] : counts) out[key] = rat(Int(static_cast<long>(v)), total);
  return out;
}

// ---------------------------------------------------------------------------
// local solubility of z^2 = f(x,y) over Q_p
// ---------------------------------------------------------------------------

namespace {

using ZPoly = std::array<Int, 5>;  // c[i] = coefficient of X^i

Int zp_eval(const ZPoly& u, const Int& x) {
  Int v = 0;
  for (int i = 4; i >= 0; --i) v = v * x + u[i];
  return v;
}

Int zp_eval_deriv(const ZPoly& u, const Int& x) {
  Int v = 0;
  for (int i = 4; i >= 1; --i) v = v * x + i * u[i];
  return v;
}

bool unit_square(const Int& unit, const Int& p) {
  if (p == 2) return mpz_fdiv_ui(unit.get_mpz_t(), 8) == 1;
  // Euler criterion
  Int r;
  Int e = (p - 1) / 2;
  mpz_powm(r.get_mpz_t(), unit.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r == 1;
}

// Decide: exists X in Z_p with p^parity * u(X) a square or zero in Q_p.
// depth limits the number of residue-disc refinements.
bool search_disc(ZPoly u, const Int& p, int parity, int depth) {
  // content normalization: divide out p^c, flip parity by c
  int c = -1;
  for (const Int& co : u) {
    if (co == 0) continue;
    int v = valuation(co, p);
    c = (c < 0) ? v : std::min(c, v);
  }
  if (c < 0) return true;  // zero polynomial: value 0 everywhere
  if (c > 0) {
    Int pc = pow_int(p, c);
    for (Int& co : u) co /= pc;
    parity = (parity + c) & 1;
  }
  for (Int x0 = 0; x0 < p; ++x0) {
    Int t = zp_eval(u, x0);
    if (t == 0) return true;  // exact root: z = 0 point
    if (!mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
      // unit value on the whole residue disc
      if (parity) continue;  // odd total valuation everywhere
      if (p != 2) {
        if (unit_square(t, p)) return true;
        continue;  // non-square unit class is constant on the disc
      }
      // p = 2: value mod 8 varies over the disc with period 4 in the digit
      for (int j = 0; j < 4; ++j) {
        Int tj = zp_eval(u, x0 + 2 * j);
        if (mpz_fdiv_ui(tj.get_mpz_t(), 8) == 1) return true;
      }
      continue;
    }
    int w = valuation(t, p);
    Int dv = zp_eval_deriv(u, x0);
    int mu = (dv == 0) ? w + 1 : valuation(dv, p);  // effectively infinite
    if (w > 2 * mu) return true;  // Hensel: values cover p^w Z_p
    if ((w + parity) % 2 == 0) {
      Int unit = t / pow_int(p, w);
      if (unit_square(unit, p)) return true;
    }
    if (depth <= 0) continue;
    // refine into the disc X = x0 + p X' (binomial expansion, degree 4)
    ZPoly u1{};
    {
      Int p1 = p, p2 = p1 * p1, p3 = p2 * p1, p4 = p3 * p1;
      const Int &A = u[4], &B = u[3], &C = u[2], &D = u[1];
      const Int& x = x0;
      u1[4] = A * p4;
      u1[3] = p3 * (4 * A * x + B);
      u1[2] = p2 * (6 * A * x * x + 3 * B * x + C);
      u1[1] = p1 * (4 * A * x * x * x + 3 * B * x * x + 2 * C * x + D);
      u1[0] = t;
    }
    if (search_disc(u1, p, parity, depth - 1)) return true;
  }
  return false;
}

}  // namespace

bool lp_soluble_depth(const QuarticForm& f, const Int& p, int max_depth) {
  Int D = disc(f);
  if (D == 0) throw std::invalid_argument("degenerate discriminant");
  ZPoly u = {f.e, f.d, f.c, f.b, f.a};  // f(X, 1)
  if (search_disc(u, p, 0, max_depth)) return true;
  // points (1 : y) with y in pZ_p: f(1, pY)
  Int p1 = p, p2 = p1 * p1, p3 = p2 * p1, p4 = p3 * p1;
  ZPoly v = {f.a, f.b * p1, f.c * p2, f.d * p3, f.e * p4};
  return search_disc(v, p, 0, max_depth);
}

bool lp_soluble(const QuarticForm& f, const Int& p) {
  Int D = disc(f);
  if (D == 0) throw std::invalid_argument("degenerate discriminant");
  int v = valuation(D, p);
  int depth = v / 2 + (p == 2 ? 2 : 1);
  return lp_soluble_depth(f, p, depth);
}

bool linf_soluble(const QuarticForm& f) {
  return signature(f) != SignatureClass::c2minus;
}

// ---------------------------------------------------------------------------
// local mass m_p
// ---------------------------------------------------------------------------

long hermite_rep_count(const Int& p, int k) {
  if (k == 0) return 1;
  Int n = (p + 1) * pow_int(p, static_cast<unsigned>(k - 1));
  return static_cast<long>(n.get_si());
}

long mp_level(const QuarticForm& f, const Int& p, int k) {
  if (k == 0) return 1;
  long hits = 0;
  long reps = 0;
  for (int a = 0; a <= k; ++a) {
    Int pa = pow_int(p, a);
    Int pk_a = pow_int(p, k - a);
    // One representative per index-p^k primitive row lattice: the row span of
    // [[p^a, b], [0, p^(k-a)]] depends on b only mod p^(k-a).
    for (Int b = 0; b < pk_a; ++b) {
      if (a > 0 && a < k && mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        continue;  // gcd divisible by p
      ++reps;
      ScaledMap g{pa, b, 0, pk_a};
      if (act_if_integral(f, g)) ++hits;
    }
  }
  assert(reps == hermite_rep_count(p, k));
  return hits;
}

Int mp_total(const QuarticForm& f, const Int& p) {
  Int D = disc(f);
  if (D == 0) throw std::invalid_argument("degenerate discriminant");
  int v = valuation(D, p);
  Int total = 0;
  for (int k = 0; 2 * k <= v; ++k) total += mp_level(f, p, k);
  return total;
}

LocalWeight global_weights(const QuarticForm& f) {
  Int D = disc(f);
  if (D == 0) throw std::invalid_argument("degenerate discriminant");
  LocalWeight w;
  w.disc_factors = factorize(D);
  w.m = 1;
  bool soluble = linf_soluble(f);
  if (soluble) soluble = lp_soluble(f, 2);
  for (auto& [p, e] : w.disc_factors) {
    if (e < 2) continue;
    w.m *= mp_total(f, p);
    if (soluble && p != 2) soluble = lp_soluble(f, p);
  }
  // m_2 contributes even if 2^2 | disc handled above; for p with e < 2 the
  // level-k >= 1 masses vanish, so m_p = 1.
  w.ell = soluble ? 1 : 0;
  return w;
}

}  // namespace qc
