#include "qc/reduce.hpp"

#include "qc/integers.hpp"
#include "qc/localp.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <omp.h>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qc {

namespace {

using i64 = long;
using i128 = __int128;
using F5 = std::array<i64, 5>;

constexpr i64 kCoeffCap = (1LL << 60);

// substitution f((x,y) * [[m,n],[k,l]]) computed in 128-bit; nullopt when a
// coefficient leaves the safe range
std::optional<F5> sub_ll(const F5& f, i64 m, i64 n, i64 k, i64 l) {
  i128 a = f[0], b = f[1], c = f[2], d = f[3], e = f[4];
  // powers of the two linear images: u = (m,n), v = (k,l)
  // new coefficient of x^(4-i) y^i is sum over the expansion; compute via
  // iterated one-variable substitution x -> m x + k y, y -> n x + l y using
  // homogeneous convolution.
  i128 co[5] = {a, b, c, d, e};
  i128 out[5] = {0, 0, 0, 0, 0};
  // (m x + k y)^p * (n x + l y)^q expansion, accumulate
  for (int i = 0; i < 5; ++i) {
    int p = 4 - i, q = i;
    // binomial expansions
    i128 mp[5] = {0}, lq[5] = {0};
    mp[0] = 1;
    for (int t = 0; t < p; ++t) {  // multiply by (m x + k y)
      for (int s = t + 1; s >= 1; --s) mp[s] = mp[s] * m + mp[s - 1] * k;
      mp[0] *= m;
    }
    lq[0] = 1;
    for (int t = 0; t < q; ++t) {  // multiply by (n x + l y)
      for (int s = t + 1; s >= 1; --s) lq[s] = lq[s] * n + lq[s - 1] * l;
      lq[0] *= n;
    }
    for (int s = 0; s <= p; ++s)
      for (int t = 0; t <= q; ++t) out[s + t] += co[i] * mp[s] * lq[t];
  }
  F5 r;
  for (int i = 0; i < 5; ++i) {
    if (out[i] > kCoeffCap || out[i] < -kCoeffCap) return std::nullopt;
    r[i] = static_cast<i64>(out[i]);
  }
  return r;
}

// total order used by the descent: largest absolute coefficient first, then
// the L1 norm, then lexicographic on absolute values, then signed
// lexicographic.  The leading maxabs/L1 components give the descent a
// well-behaved landscape (a pure coefficient-lex key rewards shrinking |a|
// while the tail explodes, and equivalent forms then stall in different
// local minima).
bool key_less(const F5& x, const F5& y) {
  i64 mx = 0, my = 0, sx = 0, sy = 0;
  for (int i = 0; i < 5; ++i) {
    mx = std::max(mx, std::labs(x[i]));
    my = std::max(my, std::labs(y[i]));
    sx += std::labs(x[i]);
    sy += std::labs(y[i]);
  }
  if (mx != my) return mx < my;
  if (sx != sy) return sx < sy;
  for (int i = 0; i < 5; ++i) {
    i64 ax = std::labs(x[i]), ay = std::labs(y[i]);
    if (ax != ay) return ax < ay;
  }
  return x < y;
}

struct Mv {
  i64 m, n, k, l;
};

std::vector<Mv> make_moves(int radius) {
  std::vector<Mv> mv;
  for (int k = 1; k <= radius; ++k) {
    mv.push_back({1, 0, k, 1});    // x -> x + k y
    mv.push_back({1, 0, -k, 1});
    mv.push_back({1, k, 0, 1});    // y -> y + k x
    mv.push_back({1, -k, 0, 1});
  }
  mv.push_back({0, 1, 1, 0});      // swap
  mv.push_back({-1, 0, 0, 1});     // sign flip on x
  return mv;
}

i64 round_div(i64 num, i64 den) {  // nearest integer to num/den, den != 0
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i64 q = num >= 0 ? (2 * num + den) / (2 * den) : -((-2 * num + den) / (2 * den));
  return q;
}

// computed large translations that recentre b (or d) in one step
void add_computed(const F5& f, std::vector<Mv>& extra) {
  extra.clear();
  if (f[0] != 0) {
    i64 k = -round_div(f[1], 4 * f[0]);
    if (k != 0) extra.push_back({1, 0, k, 1});
  }
  if (f[4] != 0) {
    i64 k = -round_div(f[3], 4 * f[4]);
    if (k != 0) extra.push_back({1, k, 0, 1});
  }
}

F5 descend_ll(F5 cur, int radius, bool pair_stage) {
  const std::vector<Mv> moves = make_moves(radius);
  std::vector<Mv> extra;
  for (;;) {
    bool improved = false;
    // steepest single move (including computed recentring translations)
    add_computed(cur, extra);
    F5 best = cur;
    auto consider = [&](const Mv& g) {
      if (auto c = sub_ll(cur, g.m, g.n, g.k, g.l))
        if (key_less(*c, best)) best = *c;
    };
    for (const Mv& g : extra) consider(g);
    for (const Mv& g : moves) consider(g);
    if (key_less(best, cur)) {
      cur = best;
      continue;
    }
    if (!pair_stage) break;
    // local minimum: explore all two-move compositions
    for (const Mv& g1 : moves) {
      auto mid = sub_ll(cur, g1.m, g1.n, g1.k, g1.l);
      if (!mid) continue;
      for (const Mv& g2 : moves) {
        if (auto c = sub_ll(*mid, g2.m, g2.n, g2.k, g2.l))
          if (key_less(*c, best)) best = *c;
      }
    }
    if (key_less(best, cur)) {
      cur = best;
      improved = true;
    }
    if (!improved) break;
  }
  return cur;
}

bool fits_ll(const QuarticForm& f, F5& out) {
  const Int* c[5] = {&f.a, &f.b, &f.c, &f.d, &f.e};
  for (int i = 0; i < 5; ++i) {
    if (!c[i]->fits_slong_p()) return false;
    out[i] = c[i]->get_si();
    if (out[i] > kCoeffCap || out[i] < -kCoeffCap) return false;
  }
  return true;
}

QuarticForm from_ll(const F5& f) {
  return QuarticForm{f[0], f[1], f[2], f[3], f[4]};
}

// mpz fallback: recentring translations only, until the form fits in 64 bits
// or stops shrinking
QuarticForm shrink_mpz(QuarticForm f) {
  for (int guard = 0; guard < 256; ++guard) {
    QuarticForm best = f;
    auto consider = [&](const Int& m, const Int& n, const Int& k, const Int& l) {
      QuarticForm c = substitute<Int>(f, m, n, k, l);
      auto key = [](const QuarticForm& q) {
        return std::array<Int, 10>{abs(q.a), abs(q.b), abs(q.c), abs(q.d),
                                   abs(q.e), q.a,      q.b,      q.c,
                                   q.d,      q.e};
      };
      if (key(c) < key(best)) best = c;
    };
    if (f.a != 0) {
      Int k = -(2 * f.b + 4 * f.a) / (8 * f.a);  // approximate recentring
      if (k != 0) consider(1, 0, k, 1);
      consider(1, 0, 1, 1);
      consider(1, 0, -1, 1);
    }
    if (f.e != 0) {
      consider(1, 1, 0, 1);
      consider(1, -1, 0, 1);
    }
    consider(0, 1, 1, 0);
    consider(-1, 0, 0, 1);
    if (best == f) break;
    f = best;
    F5 tmp;
    if (fits_ll(f, tmp)) break;
  }
  return f;
}

// ---------------------------------------------------------------------------
// orbit enumeration
// ---------------------------------------------------------------------------

// integer solutions t of lo <= q*t <= hi (q != 0) as [t_lo, t_hi]
bool qrange(i64 q, i64 lo, i64 hi, i64& t_lo, i64& t_hi) {
  if (q < 0) {
    q = -q;
    i64 nlo = -hi, nhi = -lo;
    lo = nlo;
    hi = nhi;
  }
  // ceil(lo/q), floor(hi/q)
  auto fdiv = [](i64 x, i64 y) {  // floor
    i64 r = x / y;
    if ((x % y) != 0 && ((x < 0) != (y < 0))) --r;
    return r;
  };
  t_lo = -fdiv(-lo, q);
  t_hi = fdiv(hi, q);
  return t_lo <= t_hi;
}

struct Limits {
  i64 A, Hs_max, I_max, J_max;
  i128 X;
};

Limits make_limits(const Int& X, double ca, double ch) {
  if (!X.fits_slong_p()) throw std::invalid_argument("height bound too large");
  i64 x = X.get_si();
  if (x < 2) throw std::invalid_argument("height bound must be >= 2");
  Limits L;
  L.X = x;
  L.A = static_cast<i64>(std::ceil(ca * std::pow((double)x, 1.0 / 6))) + 1;
  L.Hs_max = static_cast<i64>(std::ceil(ch * std::cbrt((double)x))) + 1;
  i64 im = static_cast<i64>(std::cbrt((double)x)) + 2;
  while (im > 0 && (i128)im * im * im >= x) --im;
  L.I_max = im;
  i64 jm = static_cast<i64>(std::sqrt(4.0 * (double)x)) + 2;
  while (jm > 0 && (i128)jm * jm >= 4 * (i128)x) --jm;
  L.J_max = jm;
  return L;
}

i64 r_bound(const Limits& L, i64 a) {
  // from the seminvariant syzygy Hs^3 - 48 I a^2 Hs + 64 J a^3 = -27 R^2
  double h = (double)(L.Hs_max + 12 * a * a);
  double v = h * h * h + 48.0 * (double)L.I_max * (double)a * a * h +
             64.0 * (double)L.J_max * (double)a * a * a;
  return static_cast<i64>(std::ceil(std::sqrt(v / 27.0))) + 1;
}

// scan one leading-coefficient column; appends fast-reduced candidates
void scan_column(const Limits& L, i64 aa, std::vector<F5>& out) {
  const i64 a = std::labs(aa);
  const i64 Rb = r_bound(L, a);
  // the b-window lets 3b^2 contribute up to 12a^2 on top of the X^(1/3)
  // scale of the seminvariant 8ac - 3b^2
  const i64 hs_cap = L.Hs_max + 12 * a * a;
  for (i64 b = -2 * a + 1; b <= 2 * a; ++b) {
    // c window: |8 aa c - 3 b^2| <= hs_cap
    i64 c_lo, c_hi;
    if (!qrange(8 * aa, 3 * b * b - hs_cap, 3 * b * b + hs_cap, c_lo, c_hi))
      continue;
    for (i64 c = c_lo; c <= c_hi; ++c) {
      const i64 Hs = 8 * aa * c - 3 * b * b;
      const i64 Kd = b * b * b - 4 * aa * b * c;
      // d window: |Kd + 8 a^2 d| <= Rb
      i64 d_lo, d_hi;
      if (!qrange(8 * aa * aa, -Rb - Kd, Rb - Kd, d_lo, d_hi)) continue;
      for (i64 d = d_lo; d <= d_hi; ++d) {
        // e window from |I| <= I_max, I = 12 aa e - 3 b d + c^2
        i64 e_lo, e_hi;
        i64 base = 3 * b * d - c * c;
        if (!qrange(12 * aa, -L.I_max + base, L.I_max + base, e_lo, e_hi))
          continue;
        // e window from |J| <= J_max, J = 9 Hs e + K0
        i128 K0 =
            (i128)9 * b * c * d - (i128)27 * aa * d * d - (i128)2 * c * c * c;
        if (Hs == 0) {
          if (K0 > L.J_max || K0 < -L.J_max) continue;
        } else {
          if (K0 > (i128)1 << 62 || K0 < -((i128)1 << 62)) continue;
          i64 j_lo, j_hi;
          if (!qrange(9 * Hs, (i64)(-L.J_max - K0), (i64)(L.J_max - K0), j_lo,
                      j_hi))
            continue;
          e_lo = std::max(e_lo, j_lo);
          e_hi = std::min(e_hi, j_hi);
        }
        for (i64 e = e_lo; e <= e_hi; ++e) {
          i64 I = 12 * aa * e - 3 * b * d + c * c;
          i128 J = (i128)9 * Hs * e + K0;
          if ((i128)I * I * I >= L.X || (i128)I * I * I <= -L.X) continue;
          if (J * J >= 4 * L.X) continue;
          i128 D = 4 * (i128)I * I * I - J * J;  // 27 * disc
          if (D == 0) continue;
          F5 f{aa, b, c, d, e};
          out.push_back(descend_ll(f, 2, false));
        }
      }
    }
  }
}

std::vector<QuarticForm> finalize_candidates(std::vector<F5>& cand,
                                             int radius) {
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<F5> canon;
  canon.reserve(cand.size());
  for (const F5& f : cand) canon.push_back(descend_ll(f, radius, true));
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  std::vector<QuarticForm> out;
  out.reserve(canon.size());
  for (const F5& f : canon) out.push_back(from_ll(f));
  return out;
}

OrbitRecord classify(const QuarticForm& rep, int radius, bool full) {
  OrbitRecord r;
  r.rep = rep;
  auto [I, J] = invariants(rep);
  r.I = I;
  r.J = J;
  r.disc = disc_from_invariants(I, J);
  r.height = height(I, J);
  r.cls = signature(rep);
  if (full) {
    r.irreducible = quartic_irreducible(rep);
    r.generic = r.irreducible && !cubic_has_rational_root(I, J);
    r.stab = r.generic ? 1 : stabilizer_order(rep, radius);
  }
  return r;
}

}  // namespace

QuarticForm canonicalize(const QuarticForm& f, int radius) {
  F5 ll;
  QuarticForm g = f;
  if (!fits_ll(g, ll)) {
    g = shrink_mpz(g);
    if (!fits_ll(g, ll)) return g;  // best effort for oversized input
  }
  return from_ll(descend_ll(ll, radius, true));
}

QuarticForm fast_reduce(const QuarticForm& f) {
  F5 ll;
  if (!fits_ll(f, ll)) return canonicalize(f, 2);
  return from_ll(descend_ll(ll, 2, false));
}

bool are_equivalent(const QuarticForm& f, const QuarticForm& g) {
  if (invariants(f) != invariants(g)) return false;
  QuarticForm cf = canonicalize(f), cg = canonicalize(g);
  if (cf == cg) return true;
  // bounded certified search: breadth-first over the orbit of the smaller
  // canonical form, pruned by coefficient size
  F5 s, t;
  if (!fits_ll(cf, s) || !fits_ll(cg, t)) return false;
  if (key_less(t, s)) std::swap(s, t);
  i64 cap = 4;
  for (i64 v : t) cap = std::max(cap, std::labs(v));
  cap *= 4;
  const std::vector<Mv> moves = make_moves(3);
  std::set<F5> seen{s};
  std::deque<F5> q{s};
  std::size_t expanded = 0;
  while (!q.empty() && expanded < 200000) {
    F5 cur = q.front();
    q.pop_front();
    ++expanded;
    if (cur == t) return true;
    for (const Mv& m : moves) {
      auto c = sub_ll(cur, m.m, m.n, m.k, m.l);
      if (!c) continue;
      bool ok = true;
      for (i64 v : *c)
        if (std::labs(v) > cap) ok = false;
      if (!ok) continue;
      if (seen.insert(*c).second) q.push_back(*c);
    }
  }
  return false;
}

int stabilizer_order(const QuarticForm& f, int radius) {
  F5 ll;
  if (!fits_ll(f, ll)) throw std::invalid_argument("form too large");
  int count = 0;
  for (i64 m = 0; m <= radius; ++m)  // normalize: first nonzero of (m,n) > 0
    for (i64 n = -radius; n <= radius; ++n) {
      if (m == 0 && n <= 0) continue;
      for (i64 k = -radius; k <= radius; ++k)
        for (i64 l = -radius; l <= radius; ++l) {
          i64 det = m * l - n * k;
          if (det != 1 && det != -1) continue;
          auto c = sub_ll(ll, m, n, k, l);
          if (c && *c == ll) ++count;
        }
    }
  assert(count >= 1);
  return count;
}

std::vector<OrbitRecord> enumerate_fiber_reference(const Int& I, const Int& J,
                                                   const EnumOptions& opt) {
  Int D = disc_from_invariants(I, J);
  if (D == 0) throw std::invalid_argument("degenerate fiber");
  Rat H = height(I, J);
  Int X = H.get_num() / H.get_den() + 1;
  if (!X.fits_slong_p()) throw std::invalid_argument("fiber height too large");
  i64 x = X.get_si();
  i64 A = static_cast<i64>(std::ceil(opt.ca * std::pow((double)x, 1.0 / 6))) + 1;
  i64 Hs_max =
      static_cast<i64>(std::ceil(opt.ch * std::cbrt((double)x))) + 1;
  std::vector<F5> cand;
  for (int sg = 0; sg < 2; ++sg)
    for (i64 a = 1; a <= A; ++a) {
      i64 aa = sg ? -a : a;
      i64 hs_cap = Hs_max + 12 * a * a;
      for (i64 b = -2 * a + 1; b <= 2 * a; ++b) {
        i64 c_lo, c_hi;
        if (!qrange(8 * aa, 3 * b * b - hs_cap, 3 * b * b + hs_cap, c_lo,
                    c_hi))
          continue;
        for (i64 c = c_lo; c <= c_hi; ++c) {
          Int Hs = 8 * Int(aa) * c - 3 * Int(b) * b;
          Int rhs = -(Hs * Hs * Hs - 48 * I * aa * aa * Hs +
                      64 * J * Int(aa) * aa * aa);
          if (rhs < 0) continue;
          if (!mpz_divisible_ui_p(rhs.get_mpz_t(), 27)) continue;
          Int Rsq = rhs / 27, R;
          if (!is_square(Rsq, &R)) continue;
          for (int rs = 0; rs < 2; ++rs) {
            Int Rv = rs ? -R : R;
            if (rs == 1 && R == 0) continue;
            Int num_d = Rv - Int(b) * b * b + 4 * Int(aa) * b * c;
            Int den_d = 8 * Int(aa) * aa;
            if (!mpz_divisible_p(num_d.get_mpz_t(), den_d.get_mpz_t()))
              continue;
            Int d = num_d / den_d;
            Int num_e = I - Int(c) * c + 3 * Int(b) * d;
            Int den_e = 12 * Int(aa);
            if (!mpz_divisible_p(num_e.get_mpz_t(), den_e.get_mpz_t()))
              continue;
            Int e = num_e / den_e;
            QuarticForm f{aa, b, c, d, e};
            if (invariant_I(f) != I || invariant_J(f) != J) continue;
            F5 ll;
            if (!fits_ll(f, ll)) continue;
            cand.push_back(descend_ll(ll, 2, false));
          }
        }
      }
    }
  std::vector<QuarticForm> reps = finalize_candidates(cand, opt.radius);
  std::vector<OrbitRecord> out;
  for (const QuarticForm& r : reps) out.push_back(classify(r, opt.radius, true));
  return out;
}

namespace {

// exact integer square root test for nonnegative 128-bit values whose root
// fits in 63 bits; cheap residue filters reject most non-squares first
bool square_root_i128(i128 n, i64* root) {
  if (n < 0) return false;
  static const auto tables = [] {
    struct T {
      std::array<bool, 64> m64{};
      std::array<bool, 63> m63{};
      std::array<bool, 65> m65{};
      std::array<bool, 11> m11{};
    } t;
    for (int r = 0; r < 64; ++r) t.m64[r * r % 64] = true;
    for (int r = 0; r < 63; ++r) t.m63[r * r % 63] = true;
    for (int r = 0; r < 65; ++r) t.m65[r * r % 65] = true;
    for (int r = 0; r < 11; ++r) t.m11[r * r % 11] = true;
    return t;
  }();
  if (!tables.m64[static_cast<unsigned>(n & 63)]) return false;
  if (!tables.m63[static_cast<unsigned>(n % 63)]) return false;
  if (!tables.m65[static_cast<unsigned>(n % 65)]) return false;
  if (!tables.m11[static_cast<unsigned>(n % 11)]) return false;
  i64 r = static_cast<i64>(sqrtl(static_cast<long double>(n)));
  while (r > 0 && (i128)r * r > n) --r;
  while ((i128)(r + 1) * (r + 1) <= n) ++r;
  if ((i128)r * r != n) return false;
  *root = r;
  return true;
}

// real roots of t^3 + P t + Q in ascending order; returns 1 or 3
int depressed_cubic_roots(double P, double Q, double r[3]) {
  double disc = -4 * P * P * P - 27 * Q * Q;
  if (disc > 0) {  // three real roots (P < 0 here)
    double m = 2 * std::sqrt(-P / 3);
    double arg = 3 * Q / (P * m);
    arg = std::clamp(arg, -1.0, 1.0);
    double theta = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k)
      r[k] = m * std::cos(theta - 2 * M_PI * k / 3);
    std::sort(r, r + 3);
    return 3;
  }
  double s = std::sqrt(std::max(0.0, Q * Q / 4 + P * P * P / 27));
  double u = std::cbrt(-Q / 2 + s), v = std::cbrt(-Q / 2 - s);
  r[0] = u + v;
  return 1;
}

}  // namespace

std::vector<OrbitRecord> enumerate_fiber(const Int& I, const Int& J,
                                         const EnumOptions& opt) {
  Int D = disc_from_invariants(I, J);
  if (D == 0) throw std::invalid_argument("degenerate fiber");
  Rat H = height(I, J);
  Int X = H.get_num() / H.get_den() + 1;
  if (!X.fits_slong_p() || !I.fits_slong_p() || !J.fits_slong_p())
    throw std::invalid_argument("fiber height too large");
  const i64 x = X.get_si(), Iv = I.get_si(), Jv = J.get_si();
  const i64 A =
      static_cast<i64>(std::ceil(opt.ca * std::pow((double)x, 1.0 / 6))) + 1;
  const i64 Hs_max =
      static_cast<i64>(std::ceil(opt.ch * std::cbrt((double)x))) + 1;
  std::vector<F5> cand;
  for (int sg = 0; sg < 2; ++sg)
    for (i64 a = 1; a <= A; ++a) {
      const i64 aa = sg ? -a : a;
      const i64 hs_cap = Hs_max + 12 * a * a;
      // the syzygy forces Hs^3 - 48 I a^2 Hs + 64 J aa^3 = -27 R^2 <= 0;
      // restrict the seminvariant scan to the (padded) sublevel set of the
      // cubic, then re-check exactly per value
      const double P = -48.0 * (double)Iv * (double)a * (double)a;
      const double Q = 64.0 * (double)Jv * (double)aa * (double)aa * (double)aa;
      double rr[3];
      const int nr = depressed_cubic_roots(P, Q, rr);
      const double scale =
          std::max({std::fabs(rr[0]), std::fabs(rr[nr - 1]), 1.0});
      const double pad = 4.0 + 1e-7 * scale;
      double iv[2][2];
      int ni = 0;
      if (nr == 3 && rr[1] - pad > rr[0] + pad) {
        iv[ni][0] = -(double)hs_cap;
        iv[ni][1] = rr[0] + pad;
        ++ni;
        iv[ni][0] = rr[1] - pad;
        iv[ni][1] = rr[2] + pad;
        ++ni;
      } else {
        iv[ni][0] = -(double)hs_cap;
        iv[ni][1] = rr[nr - 1] + pad;
        ++ni;
      }
      const i128 p1 = (i128)48 * Iv * a * a;
      const i128 q1 = (i128)64 * Jv * aa * aa * aa;
      for (i64 b = -2 * a + 1; b <= 2 * a; ++b) {
        const i64 bb3 = 3 * b * b;
        for (int t = 0; t < ni; ++t) {
          const double lo = std::max(iv[t][0], -(double)hs_cap);
          const double hi = std::min(iv[t][1], (double)hs_cap);
          if (lo > hi) continue;
          i64 c_lo, c_hi;  // c with Hs = 8 aa c - 3 b^2 in [lo, hi]
          if (!qrange(8 * aa, static_cast<i64>(std::ceil(lo)) + bb3,
                      static_cast<i64>(std::floor(hi)) + bb3, c_lo, c_hi))
            continue;
          // G(c) is a cubic in c: walk it by finite differences, tracking the
          // residue mod 27*5*11*13 for a combined divisibility/square filter
          constexpr i64 M = 27 * 715;  // 715 = 5 * 11 * 13
          static const auto ok27 = [] {
            std::array<bool, M> t{};
            bool s5[5] = {}, s11[11] = {}, s13[13] = {};
            for (int r = 0; r < 13; ++r) {
              s5[r * r % 5] = true;
              s11[r * r % 11] = true;
              s13[r * r % 13] = true;
            }
            for (i64 r = 0; r < M; r += 27) {
              i64 q = r / 27;
              t[r] = s5[q % 5] && s11[q % 11] && s13[q % 13];
            }
            return t;
          }();
          auto geval = [&](i64 c) -> i128 {
            const i64 Hs = 8 * aa * c - bb3;
            return -((i128)Hs * Hs * Hs - p1 * Hs + q1);
          };
          i128 G = geval(c_lo);
          const i128 g1 = geval(c_lo + 1), g2 = geval(c_lo + 2),
                     g3 = geval(c_lo + 3);
          i128 d1 = g1 - G, d2 = g2 - 2 * g1 + G;
          const i128 d3 = g3 - 3 * g2 + 3 * g1 - G;
          auto modM = [](i128 v) {
            i64 r = static_cast<i64>(v % M);
            return static_cast<i64>(r < 0 ? r + M : r);
          };
          i64 m = modM(G), md1 = modM(d1), md2 = modM(d2);
          const i64 md3 = modM(d3);
          for (i64 c = c_lo; c <= c_hi;
               ++c, G += d1, d1 += d2, d2 += d3, m += md1, m -= (m >= M) * M,
                   md1 += md2, md1 -= (md1 >= M) * M, md2 += md3,
                   md2 -= (md2 >= M) * M) {
            if (G < 0 || !ok27[m]) continue;
            i64 R;
            if (!square_root_i128(G / 27, &R)) continue;
            for (int rs = 0; rs < 2; ++rs) {
              if (rs == 1 && R == 0) continue;
              const i64 Rv = rs ? -R : R;
              const i128 num_d =
                  (i128)Rv - (i128)b * b * b + (i128)4 * aa * b * c;
              const i128 den_d = (i128)8 * aa * aa;
              if (num_d % den_d != 0) continue;
              const i128 d128 = num_d / den_d;
              const i128 num_e = (i128)Iv - (i128)c * c + 3 * (i128)b * d128;
              const i128 den_e = (i128)12 * aa;
              if (num_e % den_e != 0) continue;
              const i128 e128 = num_e / den_e;
              if (d128 > kCoeffCap || d128 < -kCoeffCap) continue;
              if (e128 > kCoeffCap || e128 < -kCoeffCap) continue;
              const i64 d = static_cast<i64>(d128);
              const i64 e = static_cast<i64>(e128);
              const i128 Ichk =
                  (i128)12 * aa * e - (i128)3 * b * d + (i128)c * c;
              if (Ichk != Iv) continue;
              const i128 Jchk = (i128)72 * aa * c * e + (i128)9 * b * c * d -
                                (i128)27 * aa * d * d - (i128)27 * e * b * b -
                                (i128)2 * c * c * c;
              if (Jchk != Jv) continue;
              cand.push_back(descend_ll(F5{aa, b, c, d, e}, 2, false));
            }
          }
        }
      }
    }
  std::vector<QuarticForm> reps = finalize_candidates(cand, opt.radius);
  std::vector<OrbitRecord> out;
  out.reserve(reps.size());
  for (const QuarticForm& r : reps)
    out.push_back(classify(r, opt.radius, true));
  return out;
}

std::vector<OrbitRecord> enumerate_orbits(const Int& X, OrbitFilter filter,
                                          const EnumOptions& opt) {
  Limits L = make_limits(X, opt.ca, opt.ch);
  std::vector<i64> cols;
  for (i64 a = 1; a <= L.A; ++a) {
    cols.push_back(a);
    cols.push_back(-a);
  }
  std::vector<std::vector<F5>> per_col(cols.size());
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < cols.size(); ++i)
      scan_column(L, cols[i], per_col[i]);
  } else {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      scan_column(L, cols[i], per_col[i]);
      if (opt.progress) opt.progress(static_cast<long>(i + 1),
                                     static_cast<long>(cols.size()));
    }
  }
  std::vector<F5> cand;
  for (auto& v : per_col) {
    cand.insert(cand.end(), v.begin(), v.end());
    v.clear();
    v.shrink_to_fit();
  }
  std::vector<QuarticForm> reps = finalize_candidates(cand, opt.radius);
  std::vector<OrbitRecord> out;
  out.reserve(reps.size());
  for (const QuarticForm& r : reps) {
    OrbitRecord rec = classify(r, opt.radius, opt.classify);
    if (opt.classify) {
      if (filter == OrbitFilter::irreducible && !rec.irreducible) continue;
      if (filter == OrbitFilter::generic && !rec.generic) continue;
    }
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const OrbitRecord& x,
                                       const OrbitRecord& y) {
    if (x.I != y.I) return x.I < y.I;
    if (x.J != y.J) return x.J < y.J;
    return std::tie(x.rep.a, x.rep.b, x.rep.c, x.rep.d, x.rep.e) <
           std::tie(y.rep.a, y.rep.b, y.rep.c, y.rep.d, y.rep.e);
  });
  return out;
}

std::vector<QuarticForm> enumerate_orbits_boxsearch(const Int& X, long box,
                                                    int radius) {
  Limits L = make_limits(X, 1.0, 1.0);  // only I_max/J_max/X used below
  std::vector<F5> canon;
  for (i64 a = -box; a <= box; ++a)
    for (i64 b = -box; b <= box; ++b)
      for (i64 c = -box; c <= box; ++c)
        for (i64 d = -box; d <= box; ++d) {
          if (a == 0) {
            // e free only through the I window; forms with a=0 are kept so
            // the strategy stays independent of the a!=0 normalization
            for (i64 e = -box; e <= box; ++e) {
              i64 I = -3 * b * d + c * c;
              (void)I;
              F5 f{a, b, c, d, e};
              i64 Iv = 12 * a * e - 3 * b * d + c * c;
              i128 Jv = (i128)72 * a * c * e + (i128)9 * b * c * d -
                        (i128)27 * a * d * d - (i128)27 * e * b * b -
                        (i128)2 * c * c * c;
              if ((i128)Iv * Iv * Iv >= L.X || (i128)Iv * Iv * Iv <= -L.X)
                continue;
              if (Jv * Jv >= 4 * L.X) continue;
              if (4 * (i128)Iv * Iv * Iv - Jv * Jv == 0) continue;
              canon.push_back(descend_ll(f, radius, true));
            }
            continue;
          }
          i64 e_lo, e_hi;
          i64 base = 3 * b * d - c * c;
          if (!qrange(12 * a, -L.I_max + base, L.I_max + base, e_lo, e_hi))
            continue;
          for (i64 e = e_lo; e <= e_hi; ++e) {
            i64 Iv = 12 * a * e - 3 * b * d + c * c;
            i128 Jv = (i128)72 * a * c * e + (i128)9 * b * c * d -
                      (i128)27 * a * d * d - (i128)27 * e * b * b -
                      (i128)2 * c * c * c;
            if ((i128)Iv * Iv * Iv >= L.X || (i128)Iv * Iv * Iv <= -L.X)
              continue;
            if (Jv * Jv >= 4 * L.X) continue;
            if (4 * (i128)Iv * Iv * Iv - Jv * Jv == 0) continue;
            canon.push_back(descend_ll({a, b, c, d, e}, radius, true));
          }
        }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  std::vector<QuarticForm> out;
  out.reserve(canon.size());
  for (const F5& f : canon) out.push_back(from_ll(f));
  return out;
}

std::string orbit_record_json(const OrbitRecord& r) {
  const char* cls = "0";
  switch (r.cls) {
    case SignatureClass::c0: cls = "0"; break;
    case SignatureClass::c1: cls = "1"; break;
    case SignatureClass::c2plus: cls = "2+"; break;
    case SignatureClass::c2minus: cls = "2-"; break;
  }
  std::ostringstream os;
  os << "{\"a\":" << r.rep.a << ",\"b\":" << r.rep.b << ",\"c\":" << r.rep.c
     << ",\"d\":" << r.rep.d << ",\"e\":" << r.rep.e << ",\"I\":" << r.I
     << ",\"J\":" << r.J << ",\"disc\":" << r.disc << ",\"height\":";
  Rat h = r.height;
  Int num = h.get_num(), den = h.get_den();
  if (den == 1)
    os << num;
  else {
    // denominators are 1, 2 or 4; emit an exact decimal
    Int q = num / den;
    Int rem = num - q * den;
    os << q << "." << (rem * 100 / den);
  }
  os << ",\"class\":\"" << cls << "\",\"generic\":"
     << (r.generic ? "true" : "false") << ",\"stab\":" << r.stab << "}";
  return os.str();
}

}  // namespace qc
