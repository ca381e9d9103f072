#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qc/forms.hpp"

#include <complex>
#include <random>

using namespace qc;

namespace {

std::mt19937_64 rng(20240817);

QuarticForm random_form(int bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  return QuarticForm{d(rng), d(rng), d(rng), d(rng), d(rng)};
}

ScaledMap random_unimodular(int steps = 8) {
  // random word in the elementary generators, det = +-1
  ScaledMap g{1, 0, 0, 1};
  std::uniform_int_distribution<int> which(0, 2), shift(-3, 3);
  for (int i = 0; i < steps; ++i) {
    int w = which(rng);
    ScaledMap h{1, 0, 0, 1};
    if (w == 0) h = ScaledMap{1, 0, Int(shift(rng)), 1};
    else if (w == 1) h = ScaledMap{1, Int(shift(rng)), 0, 1};
    else h = ScaledMap{0, 1, 1, 0};
    // compose: g := g * h  (matrix product)
    ScaledMap r{g.m * h.m + g.n * h.k, g.m * h.n + g.n * h.l,
                g.k * h.m + g.l * h.k, g.k * h.n + g.l * h.l};
    g = r;
  }
  return g;
}

// Independent oracle: count real projective roots numerically (Durand-Kerner).
// Returns -1 when the numeric computation is too close to call.
int numeric_real_roots(const QuarticForm& f) {
  using C = std::complex<double>;
  std::vector<double> co;  // leading first
  for (const Int& x : {f.a, f.b, f.c, f.d, f.e}) co.push_back(x.get_d());
  int inf_roots = 0;
  while (!co.empty() && co.front() == 0.0) {
    co.erase(co.begin());
    ++inf_roots;
  }
  int deg = static_cast<int>(co.size()) - 1;
  if (deg <= 0) return -1;
  std::vector<C> r;
  for (int i = 0; i < deg; ++i) r.push_back(std::pow(C(0.4, 0.9), i));
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < deg; ++i) {
      C num = co[0];
      for (int j = 1; j <= deg; ++j) num = num * r[i] + co[j];
      C den = co[0];
      for (int j = 0; j < deg; ++j)
        if (j != i) den *= (r[i] - r[j]);
      r[i] -= num / den;
    }
  }
  int real = inf_roots;
  double scale = 0;
  for (auto& z : r) scale = std::max(scale, std::abs(z));
  for (auto& z : r) {
    double im = std::abs(z.imag());
    if (im < 1e-7 * std::max(1.0, scale)) ++real;
    else if (im < 1e-3 * std::max(1.0, scale)) return -1;  // ambiguous
  }
  return real;
}

}  // namespace

TEST_CASE("frozen invariant examples") {
  QuarticForm f{1, 0, 0, 0, 1};
  CHECK(invariant_I(f) == 12);
  CHECK(invariant_J(f) == 0);
  CHECK(disc(f) == 256);
  CHECK(height(f) == Rat(1728));

  QuarticForm g{0, 1, 0, -1, 0};  // x^3 y - x y^3
  CHECK(invariant_I(g) == 3);
  CHECK(invariant_J(g) == 0);
  CHECK(disc(g) == 4);
  CHECK(height(g) == Rat(27));

  QuarticForm h{1, 0, 0, 1, 1};
  CHECK(invariant_I(h) == 12);
  CHECK(invariant_J(h) == -27);
  CHECK(disc(h) == 229);
  CHECK(height(h) == Rat(1728));
  auto rc = resolvent_cubic(h);
  CHECK(rc.c1 == -36);
  CHECK(rc.c0 == 27);
}

TEST_CASE("discriminant: invariant formula equals 16-term expansion") {
  for (int i = 0; i < 5000; ++i) {
    QuarticForm f = random_form(40);
    CHECK(disc(f) == disc_direct(f));
  }
}

TEST_CASE("resolvent cubic discriminant = 729 * disc(f)") {
  for (int i = 0; i < 2000; ++i) {
    QuarticForm f = random_form(25);
    auto [I, J] = invariants(f);
    // disc(x^3 + px + q) = -4p^3 - 27 q^2 with p = -3I, q = -J
    Int dg = -4 * (-3 * I) * (-3 * I) * (-3 * I) - 27 * J * J;
    CHECK(dg == 729 * disc(f));
  }
}

TEST_CASE("height ordering and strict comparison") {
  QuarticForm g{0, 1, 0, -1, 0};  // H = 27
  auto [I, J] = invariants(g);
  CHECK(height_below(I, J, 28));
  CHECK(!height_below(I, J, 27));
}

TEST_CASE("signature: frozen examples") {
  CHECK(signature(QuarticForm{1, 0, 0, 0, 1}) == SignatureClass::c2plus);
  CHECK(signature(QuarticForm{-1, 0, 0, 0, -1}) == SignatureClass::c2minus);
  CHECK(signature(QuarticForm{1, 0, 0, 0, -1}) == SignatureClass::c1);
  CHECK(signature(QuarticForm{0, 1, 0, -1, 0}) == SignatureClass::c0);
  CHECK(signature(QuarticForm{1, 0, -5, 0, 4}) == SignatureClass::c0);
}

TEST_CASE("signature agrees with numeric root-count oracle") {
  int checked = 0;
  while (checked < 800) {
    QuarticForm f = random_form(20);
    if (disc(f) == 0) continue;
    int oracle = numeric_real_roots(f);
    if (oracle < 0) continue;
    CHECK(real_root_count(f) == oracle);
    ++checked;
  }
}

TEST_CASE("signature vs discriminant sign") {
  for (int i = 0; i < 3000; ++i) {
    QuarticForm f = random_form(15);
    Int D = disc(f);
    if (D == 0) continue;
    SignatureClass c = signature(f);
    if (D < 0)
      CHECK(c == SignatureClass::c1);
    else
      CHECK(c != SignatureClass::c1);
  }
}

TEST_CASE("unimodular action preserves invariants and signature") {
  for (int i = 0; i < 1500; ++i) {
    QuarticForm f = random_form(20);
    ScaledMap g = random_unimodular();
    CHECK(abs(g.det()) == 1);
    QuarticForm h = substitute<Int>(f, g.m, g.n, g.k, g.l);
    CHECK(invariant_I(h) == invariant_I(f));
    CHECK(invariant_J(h) == invariant_J(f));
    CHECK(disc_direct(h) == disc_direct(f));
    if (disc(f) != 0) CHECK(signature(h) == signature(f));
  }
}

TEST_CASE("twisted action: invariants of scaled maps") {
  // f((x,y) diag(1,p)) / p^2 sends (a,b,c,d,e) to (a/p^2, b/p, c, dp, ep^2)
  QuarticForm f{4, 2, 1, 1, 1};
  ScaledMap g{1, 0, 0, 2};
  auto h = act(f, g);
  CHECK(h.a == Rat(1));
  CHECK(h.b == Rat(1));
  CHECK(h.c == Rat(1));
  CHECK(h.d == Rat(2));
  CHECK(h.e == Rat(4));
}

TEST_CASE("act_if_integral matches rational action") {
  for (int i = 0; i < 500; ++i) {
    QuarticForm f = random_form(9);
    std::uniform_int_distribution<long> d(-4, 4);
    ScaledMap g{d(rng), d(rng), d(rng), d(rng)};
    if (g.det() == 0) continue;
    auto exact = act(f, g);
    auto opt = act_if_integral(f, g);
    bool integral = exact.a.get_den() == 1 && exact.b.get_den() == 1 &&
                    exact.c.get_den() == 1 && exact.d.get_den() == 1 &&
                    exact.e.get_den() == 1;
    CHECK(opt.has_value() == integral);
    if (opt) {
      CHECK(Rat(opt->a) == exact.a);
      CHECK(Rat(opt->e) == exact.e);
    }
  }
}

TEST_CASE("irreducibility: crafted cases") {
  // x^4 + x + 1 is irreducible mod 2, hence over Q
  CHECK(quartic_irreducible(QuarticForm{1, 0, 0, 1, 1}));
  // (x^2+1)(x^2+2) reducible, no rational root
  CHECK(!quartic_irreducible(QuarticForm{1, 0, 3, 0, 2}));
  // (x^2 - x y - y^2)^2 style: (x^2+xy+y^2)(x^2+2xy+3y^2)
  CHECK(!quartic_irreducible(QuarticForm{1, 3, 6, 5, 3}));
  // root at infinity
  CHECK(!quartic_irreducible(QuarticForm{0, 1, 0, -1, 0}));
  // rational root 1: (x - y)(x^3 + 2y^3)
  CHECK(!quartic_irreducible(QuarticForm{1, -1, 0, 2, -2}));
  // 2x^4 + 2x^3y + 2x^2y^2 + 2xy^3 + 2y^4 reducible (cyclotomic factors)?
  // x^4+x^3+x^2+x+1 is irreducible (5th cyclotomic)
  CHECK(quartic_irreducible(QuarticForm{1, 1, 1, 1, 1}));
  CHECK(quartic_irreducible(QuarticForm{2, 2, 2, 2, 2}));  // content does not matter
}

TEST_CASE("irreducibility: random products are reducible") {
  std::uniform_int_distribution<long> d(-6, 6);
  for (int i = 0; i < 400; ++i) {
    // product of two quadratic forms
    Int p = d(rng), q = d(rng), r = d(rng), s = d(rng), t = d(rng), u = d(rng);
    QuarticForm f{p * s, p * t + q * s, p * u + q * t + r * s, q * u + r * t,
                  r * u};
    if (f == QuarticForm{0, 0, 0, 0, 0}) continue;
    CHECK(!quartic_irreducible(f));
  }
}

TEST_CASE("irreducibility invariant under unimodular action") {
  for (int i = 0; i < 300; ++i) {
    QuarticForm f = random_form(8);
    ScaledMap g = random_unimodular();
    QuarticForm h = substitute<Int>(f, g.m, g.n, g.k, g.l);
    CHECK(quartic_irreducible(f) == quartic_irreducible(h));
    CHECK(is_generic(f) == is_generic(h));
  }
}

TEST_CASE("genericity example") {
  QuarticForm f{1, 0, 0, 1, 1};
  CHECK(is_generic(f));
  // x^4 + y^4 has reducible resolvent (J = 0)
  CHECK(!is_generic(QuarticForm{1, 0, 0, 0, 1}));
}

TEST_CASE("parse/print round trip") {
  QuarticForm f = parse_form("1, -2, 3, -4, 5");
  CHECK(f == QuarticForm{1, -2, 3, -4, 5});
  CHECK(form_to_string(f) == "1,-2,3,-4,5");
  CHECK(rat_to_string(Rat(729, 4)) == "729/4");
  CHECK(rat_to_string(Rat(8)) == "8");
}
