#include "qc/forms.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace qc {

std::string class_name(SignatureClass c) {
  switch (c) {
    case SignatureClass::c0: return "0";
    case SignatureClass::c1: return "1";
    case SignatureClass::c2plus: return "2+";
    case SignatureClass::c2minus: return "2-";
  }
  return "?";
}

std::optional<SignatureClass> class_from_name(const std::string& s) {
  if (s == "0") return SignatureClass::c0;
  if (s == "1") return SignatureClass::c1;
  if (s == "2+") return SignatureClass::c2plus;
  if (s == "2-") return SignatureClass::c2minus;
  return std::nullopt;
}

Int disc_from_invariants(const Int& I, const Int& J) {
  Int n = 4 * I * I * I - J * J;
  Int q, r;
  mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), 27);
  if (r != 0) throw std::logic_error("4I^3 - J^2 not divisible by 27");
  return q;
}

Int disc_direct(const QuarticForm& f) {
  const Int &a = f.a, &b = f.b, &c = f.c, &d = f.d, &e = f.e;
  Int a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d, e2 = e * e;
  Int a3 = a2 * a, b3 = b2 * b, c3 = c2 * c, d3 = d2 * d, e3 = e2 * e;
  return 256 * a3 * e3 - 192 * a2 * b * d * e2 - 128 * a2 * c2 * e2 +
         144 * a2 * c * d2 * e - 27 * a2 * d2 * d2 + 144 * a * b2 * c * e2 -
         6 * a * b2 * d2 * e - 80 * a * b * c2 * d * e + 18 * a * b * c * d3 +
         16 * a * c2 * c2 * e - 4 * a * c3 * d2 - 27 * b2 * b2 * e2 +
         18 * b3 * c * d * e - 4 * b3 * d3 - 4 * b2 * c3 * e + b2 * c2 * d2;
}

Rat height(const Int& I, const Int& J) {
  Int ai = abs(I);
  Rat hi(ai * ai * ai);
  Rat hj(J * J, 4);
  hj.canonicalize();
  return std::max(hi, hj);
}

Quartic<Rat> act(const QuarticForm& f, const ScaledMap& g) {
  Int det = g.det();
  if (det == 0) throw std::invalid_argument("singular map");
  QuarticForm s = substitute<Int>(f, g.m, g.n, g.k, g.l);
  Int d2 = det * det;
  auto mk = [&](const Int& n) {
    Rat r(n, d2);
    r.canonicalize();
    return r;
  };
  return {mk(s.a), mk(s.b), mk(s.c), mk(s.d), mk(s.e)};
}

std::optional<QuarticForm> act_if_integral(const QuarticForm& f, const ScaledMap& g) {
  Int det = g.det();
  if (det == 0) throw std::invalid_argument("singular map");
  QuarticForm s = substitute<Int>(f, g.m, g.n, g.k, g.l);
  Int d2 = det * det;
  for (const Int* co : {&s.a, &s.b, &s.c, &s.d, &s.e})
    if (!mpz_divisible_p(co->get_mpz_t(), d2.get_mpz_t())) return std::nullopt;
  return QuarticForm{s.a / d2, s.b / d2, s.c / d2, s.d / d2, s.e / d2};
}

// --- Sturm sequence over Q ---------------------------------------------

namespace {

using Poly = std::vector<Rat>;  // coefficient of x^i at index i

int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

Poly derivative(const Poly& p) {
  Poly q;
  for (size_t i = 1; i < p.size(); ++i) q.push_back(Rat(static_cast<long>(i)) * p[i]);
  return q;
}

Poly neg_rem(const Poly& num, const Poly& den) {
  Poly r = num;
  int dd = degree(den);
  for (int dr = degree(r); dr >= dd && dr >= 0; dr = degree(r)) {
    Rat q = r[dr] / den[dd];
    for (int i = 0; i <= dd; ++i) r[dr - dd + i] -= q * den[i];
    r[dr] = 0;
  }
  for (auto& x : r) x = -x;
  return r;
}

int sign_at_inf(const Poly& p, bool plus) {
  int d = degree(p);
  if (d < 0) return 0;
  int s = sgn(p[d]);
  if (!plus && (d % 2 == 1)) s = -s;
  return s;
}

int sign_changes(const std::vector<int>& signs) {
  int n = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++n;
    prev = s;
  }
  return n;
}

}  // namespace

int real_root_count(const QuarticForm& f) {
  if (disc(f) == 0) throw std::invalid_argument("degenerate discriminant");
  Poly p = {Rat(f.e), Rat(f.d), Rat(f.c), Rat(f.b), Rat(f.a)};
  int extra = (f.a == 0) ? 1 : 0;  // simple root at infinity
  std::vector<Poly> chain;
  chain.push_back(p);
  chain.push_back(derivative(p));
  while (degree(chain.back()) > 0) {
    Poly nxt = neg_rem(chain[chain.size() - 2], chain.back());
    if (degree(nxt) < 0) break;
    chain.push_back(nxt);
  }
  std::vector<int> at_minus, at_plus;
  for (const auto& q : chain) {
    at_minus.push_back(sign_at_inf(q, false));
    at_plus.push_back(sign_at_inf(q, true));
  }
  return extra + sign_changes(at_minus) - sign_changes(at_plus);
}

SignatureClass signature(const QuarticForm& f) {
  int r = real_root_count(f);
  if (r == 4) return SignatureClass::c0;
  if (r == 2) return SignatureClass::c1;
  // no real roots: definite; a != 0 (a == 0 would give a root at infinity)
  return (f.a > 0) ? SignatureClass::c2plus : SignatureClass::c2minus;
}

Cubic resolvent_cubic(const QuarticForm& f) {
  auto [I, J] = invariants(f);
  return Cubic{1, 0, -3 * I, -J};
}

bool cubic_has_rational_root(const Int& I, const Int& J) {
  // monic integral cubic x^3 - 3I x - J: rational roots are integers dividing J.
  if (J == 0) return true;  // x = 0
  for (const Int& r : divisors(J)) {
    for (int s : {1, -1}) {
      Int x = s * r;
      if (x * x * x - 3 * I * x - J == 0) return true;
    }
  }
  return false;
}

namespace {

// integer roots of a monic integral quartic z^4 + B z^3 + C z^2 + D z + E
bool monic_quartic_has_integer_root(const Int& B, const Int& C, const Int& D,
                                    const Int& E) {
  if (E == 0) return true;  // z = 0
  for (const Int& r : divisors(E)) {
    for (int s : {1, -1}) {
      Int z = s * r;
      if ((((z + B) * z + C) * z + D) * z + E == 0) return true;
    }
  }
  return false;
}

// monic integral quartic factors as product of two monic integer quadratics
bool monic_quartic_has_quadratic_factor(const Int& B, const Int& C,
                                        const Int& D, const Int& E) {
  // (z^2 + p z + q)(z^2 + r z + s): p+r=B, q+s+pr=C, ps+qr=D, qs=E.
  if (E == 0) return true;  // covered by root case, but harmless
  for (const Int& q0 : divisors(E)) {
    for (int sg : {1, -1}) {
      Int q = sg * q0;
      Int s = E / q;
      // p + r = B, p r = C - q - s
      Int pr = C - q - s;
      Int discq = B * B - 4 * pr;
      Int root;
      if (!is_square(discq, &root)) continue;
      for (int pm : {1, -1}) {
        Int twop = B + pm * root;
        if (twop % 2 != 0) continue;
        Int p = twop / 2;
        Int r = B - p;
        if (p * s + q * r == D) return true;
      }
    }
  }
  return false;
}

}  // namespace

bool quartic_irreducible(const QuarticForm& f) {
  if (f.a == 0 || f.e == 0) return false;  // rational root at (1:0) or (0:1)
  // Monicize: z = a x gives g(z) = z^4 + b z^3 + ac z^2 + a^2 d z + a^3 e,
  // with the same splitting behaviour over Q as f(x,1).
  Int B = f.b, C = f.a * f.c, D = f.a * f.a * f.d,
      E = f.a * f.a * f.a * f.e;
  if (monic_quartic_has_integer_root(B, C, D, E)) return false;
  if (monic_quartic_has_quadratic_factor(B, C, D, E)) return false;
  return true;
}

bool is_generic(const QuarticForm& f) {
  if (!quartic_irreducible(f)) return false;
  auto [I, J] = invariants(f);
  return !cubic_has_rational_root(I, J);
}

QuarticForm parse_form(const std::string& text) {
  std::vector<Int> v;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    // trim spaces
    size_t b = cur.find_first_not_of(" \t");
    size_t e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("bad form: " + text);
    v.emplace_back(cur.substr(b, e - b + 1));
  }
  if (v.size() != 5) throw std::invalid_argument("form needs 5 coefficients: " + text);
  return QuarticForm{v[0], v[1], v[2], v[3], v[4]};
}

std::string form_to_string(const QuarticForm& f) {
  std::ostringstream o;
  o << f.a << "," << f.b << "," << f.c << "," << f.d << "," << f.e;
  return o.str();
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream o;
  if (r.get_den() == 1)
    o << r.get_num();
  else
    o << r.get_num() << "/" << r.get_den();
  return o.str();
}

}  // namespace qc
