#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qc/localp.hpp"

#include <random>
#include <set>

using namespace qc;

namespace {

std::mt19937_64 rng(777);

QuarticForm random_form(int bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  return QuarticForm{d(rng), d(rng), d(rng), d(rng), d(rng)};
}

// Exhaustive congruence oracle: does z^2 = f(x,y) admit a solution mod p^N
// with (x,y) primitive?  Necessary for Q_p-solubility at every N; for an
// insoluble form it fails for N large enough.
bool soluble_mod_oracle(const QuarticForm& f, long p, int N) {
  long q = 1;
  for (int i = 0; i < N; ++i) q *= p;
  std::set<long> squares;
  for (long z = 0; z < q; ++z) squares.insert((z * z) % q);
  auto evalm = [&](long x, long y) {
    auto md = [&](const Int& v) {
      return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), q));
    };
    long a = md(f.a), b = md(f.b), c = md(f.c), d = md(f.d), e = md(f.e);
    __int128 v = 0;
    long xs[5] = {1, 1, 1, 1, 1};
    long co[5] = {a, b, c, d, e};
    long xp = 1;
    for (int i = 0; i < 5; ++i) {
      xs[4 - i] = xp;
      xp = static_cast<long>((static_cast<__int128>(xp) * x) % q);
    }
    long yp = 1;
    for (int i = 0; i < 5; ++i) {
      v = (v + static_cast<__int128>(co[i]) * xs[i] % q * yp) % q;
      yp = static_cast<long>((static_cast<__int128>(yp) * y) % q);
    }
    return static_cast<long>(v);
  };
  for (long x = 0; x < q; ++x)
    for (long y = 0; y < q; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      if (squares.count(evalm(x, y))) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("splitting types: hand examples") {
  CHECK(splitting_type(QuarticForm{1, 0, 0, 0, -1}, 5).name() == "(1111)");
  CHECK(splitting_type(QuarticForm{0, 1, 0, -1, 0}, 5).name() == "(1111)");
  CHECK(splitting_type(QuarticForm{0, 1, 0, -1, 0}, 3).name() == "(1111)");
  CHECK(splitting_type(QuarticForm{1, 0, 0, 0, 1}, 5).name() == "(22)");
  CHECK(splitting_type(QuarticForm{0, 0, 0, 0, 1}, 7).name() == "(1^4)");
  CHECK(splitting_type(QuarticForm{0, 0, 1, 0, 0}, 7).name() == "(1^21^2)");
  CHECK(splitting_type(QuarticForm{1, 0, 2, 0, 1}, 3).name() == "(2^2)");
  CHECK(splitting_type(QuarticForm{3, 3, 3, 3, 3}, 3).name() == "(0)");
  CHECK(splitting_type(QuarticForm{1, 0, 0, 1, 1}, 2).name() == "(4)");
  // index bookkeeping
  SplittingType t = splitting_type(QuarticForm{0, 0, 1, 0, 0}, 7);
  CHECK(t.index() == 2);
  CHECK(t.has_multiple_factor());
}

TEST_CASE("splitting type counts mod 2 cover all forms") {
  // smoke: every form mod 2 classifies without error, sum of counts = 32
  long n = 0;
  for (std::uint64_t m = 0; m < 32; ++m) {
    std::uint64_t co[5] = {(m >> 4) & 1u, (m >> 3) & 1u, (m >> 2) & 1u,
                           (m >> 1) & 1u, m & 1u};
    auto t = splitting_type_mod(co, 2);
    int deg = 0;
    for (auto& [d, mu] : t.parts) deg += d * mu;
    if (!t.zero) CHECK(deg == 4);
    ++n;
  }
  CHECK(n == 32);
}

TEST_CASE("Table 1 densities: brute force equals closed forms, p=3,5") {
  for (std::uint64_t p : {3ull, 5ull}) {
    auto bf = splitting_density_bruteforce(p, false);
    Rat sum = 0;
    for (auto& [name, dens] : bf) {
      sum += dens;
      CHECK(dens == density_splitting(name, p));
    }
    CHECK(sum == Rat(1));
    CHECK(bf.size() == 12);  // 11 types + zero
  }
}

TEST_CASE("density sweep: serial and parallel kernels agree") {
  auto s = splitting_density_bruteforce(5, false);
  auto par = splitting_density_bruteforce(5, true);
  CHECK(s == par);
}

TEST_CASE("Table 2 slice densities: brute force equals closed forms, p=3") {
  std::vector<std::string> rows = {
      "(1111)", "(112)", "(13)", "(22)", "(4)", "(1^211)", "(1^22)", "(1^31)",
      "(1^21^2)", "(2^2)", "(1^4)", "max:(1^211)", "max:(1^22)", "max:(1^31)"};
  for (int k = 0; k <= 3; ++k) {
    auto bf = slice_density_bruteforce(3, k, false);
    for (const auto& row : rows) {
      Rat got = bf.count(row) ? bf[row] : Rat(0);
      CHECK_MESSAGE(got == density_slice(row, 3, k),
                    "row ", row, " k=", k);
    }
  }
  // k = 2 and k = 3 agree row by row
  CHECK(slice_density_bruteforce(3, 2, false) ==
        slice_density_bruteforce(3, 3, false));
}

TEST_CASE("slice densities independent of the unit representative") {
  auto u1 = slice_density_bruteforce(5, 1, false, 1);
  auto u2 = slice_density_bruteforce(5, 1, false, 2);  // non-square unit
  CHECK(u1 == u2);
  auto s = slice_density_bruteforce(5, 0, false);
  auto par = slice_density_bruteforce(5, 0, true);
  CHECK(s == par);
}

TEST_CASE("maximality examples") {
  // y^2 x^2 ... f = x^2 y^2 type (1^21^2): never maximal
  CHECK(!is_resolvent_maximal_at(QuarticForm{0, 0, 1, 0, 0}, 5));
  // f = x^2 (x - y)(x + y) + p * y^4: double root at 0 with f(0,1) = p
  CHECK(is_resolvent_maximal_at(QuarticForm{1, 0, -1, 0, 5}, 5));
  // same with p^2: not maximal
  CHECK(!is_resolvent_maximal_at(QuarticForm{1, 0, -1, 0, 25}, 5));
  // no multiple roots: vacuously maximal
  CHECK(is_resolvent_maximal_at(QuarticForm{1, 0, 0, 0, -1}, 5));
}

TEST_CASE("local solubility: certificates and hand cases") {
  // z^2 = x^4 + y^4: point (1,0,1)
  CHECK(lp_soluble(QuarticForm{1, 0, 0, 0, 1}, 2));
  CHECK(lp_soluble(QuarticForm{1, 0, 0, 0, 1}, 3));
  // 3(x^4 + y^4) has constant 3-adic valuation 1 on primitive vectors
  CHECK(!lp_soluble(QuarticForm{3, 0, 0, 0, 3}, 3));
  // rational root => always soluble
  CHECK(lp_soluble(QuarticForm{0, 1, 0, -1, 0}, 2));
  CHECK(lp_soluble(QuarticForm{0, 1, 0, -1, 0}, 5));
  // negative definite forms are still p-adically fine if values hit squares
  CHECK(lp_soluble(QuarticForm{-1, 0, 0, 0, -2}, 7));  // -1-2*16 = ...; v(f)=0 somewhere
  CHECK(!linf_soluble(QuarticForm{-1, 0, 0, 0, -1}));
  CHECK(linf_soluble(QuarticForm{1, 0, 0, 0, -1}));
}

TEST_CASE("local solubility agrees with congruence oracle") {
  int tested = 0;
  while (tested < 150) {
    QuarticForm f = random_form(6);
    if (disc(f) == 0) continue;
    for (long p : {2L, 3L, 5L}) {
      bool impl = lp_soluble(f, p);
      if (impl) {
        // necessary condition at moderate depth must hold
        int N = (p == 2) ? 6 : (p == 3 ? 4 : 3);
        CHECK_MESSAGE(soluble_mod_oracle(f, p, N), "false negative oracle p=", p,
                      " f=", form_to_string(f));
      } else {
        // insoluble: congruence obstruction must appear at some depth
        bool found_obstruction = false;
        int maxN = (p == 2) ? 9 : (p == 3 ? 6 : 4);
        for (int N = 2; N <= maxN && !found_obstruction; ++N)
          if (!soluble_mod_oracle(f, p, N)) found_obstruction = true;
        CHECK_MESSAGE(found_obstruction, "claimed insoluble p=", p,
                      " f=", form_to_string(f));
      }
    }
    ++tested;
  }
}

TEST_CASE("odd p with p^2 not dividing disc is always soluble") {
  int tested = 0;
  while (tested < 300) {
    QuarticForm f = random_form(12);
    Int D = disc(f);
    if (D == 0) continue;
    for (long p : {3L, 5L, 7L}) {
      if (valuation(D, p) < 2) CHECK(lp_soluble(f, p));
    }
    ++tested;
  }
}

TEST_CASE("solubility decisions stable in extra depth") {
  int tested = 0;
  while (tested < 120) {
    QuarticForm f = random_form(8);
    Int D = disc(f);
    if (D == 0) continue;
    for (long p : {2L, 3L, 5L}) {
      int v = valuation(D, p);
      int base = v / 2 + (p == 2 ? 2 : 1);
      bool b0 = lp_soluble_depth(f, p, base);
      CHECK(b0 == lp_soluble_depth(f, p, base + 3));
    }
    ++tested;
  }
}

TEST_CASE("Hermite representative counts") {
  for (long p : {3L, 5L, 7L}) {
    CHECK(hermite_rep_count(p, 0) == 1);
    for (int k = 1; k <= 4; ++k) {
      long expect = (p + 1);
      for (int i = 1; i < k; ++i) expect *= p;
      CHECK(hermite_rep_count(p, k) == expect);
    }
  }
}

TEST_CASE("m_p hand examples") {
  for (long p : {3L, 5L, 7L}) {
    // x^4 + p^2 y^4: the only distance-1 node where the form is
    // integral-valued is the lattice p Z_p + Z_p, so m_p = 1 + 1.
    QuarticForm f{1, 0, 0, 0, p * p};
    CHECK(mp_level(f, p, 0) == 1);
    CHECK(mp_level(f, p, 1) == 1);
    CHECK(mp_level(f, p, 2) == 0);
    CHECK(mp_total(f, p) == 2);
    // p^2 (x^4 + y^4): integral-valued at every distance-1 node (values are
    // all in p^2 Z_p) and at no distance-2 node since -1 is not a fourth
    // power mod p^2 for p in {3,5,7} and the unit discriminant 256 blocks
    // deeper vanishing.  m_p = 1 + (p + 1).
    QuarticForm g{p * p, 0, 0, 0, p * p};
    CHECK(mp_level(g, p, 1) == p + 1);
    CHECK(mp_level(g, p, 2) == 0);
    CHECK(mp_total(g, p) == p + 2);
  }
}

TEST_CASE("mp_level matches direct lattice-integrality oracle") {
  // Independent of act(): a node at distance k is counted when the form
  // takes values divisible by p^(2k) on the whole index-p^k row lattice.
  auto oracle = [](const QuarticForm& f, long p, int k) {
    long q = 1;
    for (int i = 0; i < 2 * k; ++i) q *= p;  // p^(2k)
    long hits = 0;
    for (int a = 0; a <= k; ++a) {
      long pa = 1, pb = 1;
      for (int i = 0; i < a; ++i) pa *= p;
      for (int i = 0; i < k - a; ++i) pb *= p;
      for (long b = 0; b < pb; ++b) {
        if (a > 0 && a < k && b % p == 0) continue;
        bool ok = true;
        for (long s = 0; s < q && ok; ++s)
          for (long t = 0; t < q && ok; ++t) {
            Int x = Int(s) * pa;
            Int y = Int(s) * b + Int(t) * pb;
            Int v = f.a * x * x * x * x + f.b * x * x * x * y +
                    f.c * x * x * y * y + f.d * x * y * y * y +
                    f.e * y * y * y * y;
            if (!mpz_divisible_ui_p(v.get_mpz_t(), q)) ok = false;
          }
        if (ok) ++hits;
      }
    }
    return hits;
  };
  std::uniform_int_distribution<long> d(-30, 30);
  for (int trial = 0; trial < 60; ++trial) {
    QuarticForm f{d(rng), d(rng), d(rng), d(rng), d(rng)};
    CHECK(mp_level(f, 3, 1) == oracle(f, 3, 1));
    CHECK(mp_level(f, 3, 2) == oracle(f, 3, 2));
    CHECK(mp_level(f, 5, 1) == oracle(f, 5, 1));
  }
}

TEST_CASE("m_p levels depend only on f mod p^(2k)") {
  std::uniform_int_distribution<long> d(-50, 50), lift(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    long p = (trial % 2) ? 3 : 5;
    int k = 1 + (trial % 2);
    long q = 1;
    for (int i = 0; i < 2 * k; ++i) q *= p;
    QuarticForm f{d(rng), d(rng), d(rng), d(rng), d(rng)};
    QuarticForm g{f.a + q * lift(rng), f.b + q * lift(rng), f.c + q * lift(rng),
                  f.d + q * lift(rng), f.e + q * lift(rng)};
    CHECK(mp_level(f, p, k) == mp_level(g, p, k));
  }
}

TEST_CASE("m_p invariant under unimodular change of variable") {
  std::uniform_int_distribution<long> d(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    QuarticForm f{d(rng), d(rng), d(rng), d(rng), d(rng)};
    if (disc(f) == 0) continue;
    QuarticForm g = substitute<Int>(f, Int(1), Int(0), Int(1), Int(1));
    g = substitute<Int>(g, Int(0), Int(1), Int(1), Int(0));
    for (long p : {3L, 5L}) {
      CHECK(mp_level(f, p, 1) == mp_level(g, p, 1));
      CHECK(mp_level(f, p, 2) == mp_level(g, p, 2));
    }
  }
}

TEST_CASE("global weights: smoke") {
  QuarticForm f{1, 0, 0, 1, 1};  // disc 229 (prime)
  auto w = global_weights(f);
  CHECK(w.ell == 1);
  CHECK(w.m == 1);
  QuarticForm g{3, 0, 0, 0, 3};  // insoluble at 3
  auto wg = global_weights(g);
  CHECK(wg.ell == 0);
}
