#pragma once
// Integral binary quartic forms f(x,y) = a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4,
// their invariants I, J, discriminant, height, PGL2 action and signature
// classification over the reals.
#include "qc/integers.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

namespace qc {

template <class T>
struct Quartic {
  T a{}, b{}, c{}, d{}, e{};

  bool operator==(const Quartic&) const = default;
  auto operator<=>(const Quartic&) const = default;
};

using QuarticForm = Quartic<Int>;
using QuarticLL = Quartic<long long>;

struct InvariantPair {
  Int I, J;
  bool operator==(const InvariantPair&) const = default;
  auto operator<=>(const InvariantPair&) const = default;
};

// Integer 2x2 matrix [[m, n], [k, l]] acting on row vectors:
// (x, y) -> (m x + k y, n x + l y).  The (twisted) action on forms is
// f -> f((x,y) * g) / det(g)^2; over det = ±1 this is plain substitution.
struct ScaledMap {
  Int m, n, k, l;
  Int det() const { return m * l - n * k; }
};

enum class SignatureClass { c0, c1, c2plus, c2minus };
std::string class_name(SignatureClass c);
std::optional<SignatureClass> class_from_name(const std::string& s);

// --- invariants ---------------------------------------------------------

template <class T>
T invariant_I(const Quartic<T>& f) {
  return 12 * f.a * f.e - 3 * f.b * f.d + f.c * f.c;
}

template <class T>
T invariant_J(const Quartic<T>& f) {
  return 72 * f.a * f.c * f.e + 9 * f.b * f.c * f.d - 27 * f.a * f.d * f.d -
         27 * f.e * f.b * f.b - 2 * f.c * f.c * f.c;
}

inline InvariantPair invariants(const QuarticForm& f) {
  return {invariant_I(f), invariant_J(f)};
}

// disc = (4 I^3 - J^2) / 27, always an exact integer.
Int disc_from_invariants(const Int& I, const Int& J);
inline Int disc(const QuarticForm& f) {
  auto [I, J] = invariants(f);
  return disc_from_invariants(I, J);
}

// Direct 16-term discriminant expansion (independent of I, J).
Int disc_direct(const QuarticForm& f);

// Height H(I,J) = max(|I|^3, J^2/4) as an exact rational.
Rat height(const Int& I, const Int& J);
inline Rat height(const QuarticForm& f) {
  auto [I, J] = invariants(f);
  return height(I, J);
}
// Strict comparison H(I,J) < X for an integer bound X (exact).
inline bool height_below(const Int& I, const Int& J, const Int& X) {
  Int ai = abs(I);
  return ai * ai * ai < X && J * J < 4 * X;
}

// --- action -------------------------------------------------------------

// Coefficients of f((x,y) * g); no det division (caller divides by det^2).
template <class T>
Quartic<T> substitute(const Quartic<T>& f, const T& m, const T& n, const T& k,
                      const T& l) {
  // f(mx + ky, nx + ly): expand binomially.
  // u = m x + k y, v = n x + l y; f = a u^4 + b u^3 v + c u^2 v^2 + d u v^3 + e v^4.
  std::array<T, 5> out{};  // coefficient of x^(4-i) y^i
  std::array<T, 5> up, vp;
  // powers of u and v as polynomials in (x, y): row r = coeffs of degree-r poly
  auto mul = [](const std::array<T, 5>& p, int dp, const T& s, const T& t) {
    // multiply homogeneous poly p of degree dp by (s x + t y)
    std::array<T, 5> q{};
    for (int i = 0; i <= dp; ++i) {
      q[i] += p[i] * s;
      q[i + 1] += p[i] * t;
    }
    return q;
  };
  std::array<T, 5> cur{};
  cur[0] = T(1);
  std::array<std::array<T, 5>, 5> upow, vpow;
  upow[0] = cur;
  for (int i = 1; i <= 4; ++i) upow[i] = mul(upow[i - 1], i - 1, m, k);
  vpow[0] = cur;
  for (int i = 1; i <= 4; ++i) vpow[i] = mul(vpow[i - 1], i - 1, n, l);
  const T co[5] = {f.a, f.b, f.c, f.d, f.e};
  for (int j = 0; j <= 4; ++j) {  // term co[j] * u^(4-j) * v^j
    // multiply upow[4-j] (degree 4-j) by vpow[j] (degree j)
    std::array<T, 5> term{};
    for (int r = 0; r <= 4 - j; ++r)
      for (int s = 0; s <= j; ++s) term[r + s] += upow[4 - j][r] * vpow[j][s];
    for (int i = 0; i <= 4; ++i) out[i] += co[j] * term[i];
  }
  return Quartic<T>{out[0], out[1], out[2], out[3], out[4]};
}

template <class T>
Quartic<T> substitute(const Quartic<T>& f, const T g[4]) {
  return substitute(f, g[0], g[1], g[2], g[3]);
}

// Unimodular action (det = ±1): exact, stays integral.
template <class T>
Quartic<T> act_unimodular(const Quartic<T>& f, const T& m, const T& n,
                          const T& k, const T& l) {
  return substitute(f, m, n, k, l);
}

// General twisted action f((x,y)g)/det(g)^2 over the rationals.
Quartic<Rat> act(const QuarticForm& f, const ScaledMap& g);
// Integrality test for the twisted action (used by the local-mass counts):
// returns the integral image if det(g)^2 divides every substituted coefficient.
std::optional<QuarticForm> act_if_integral(const QuarticForm& f, const ScaledMap& g);

// --- signature / genericity --------------------------------------------

// Number of distinct real roots of f in P^1(R); requires disc(f) != 0.
int real_root_count(const QuarticForm& f);
SignatureClass signature(const QuarticForm& f);

// Resolvent cubic x^3 - 3 I x - J (monic, integral; disc = 729 * disc(f)).
struct Cubic {
  Int c3, c2, c1, c0;  // c3 x^3 + c2 x^2 + c1 x + c0
};
Cubic resolvent_cubic(const QuarticForm& f);

bool cubic_has_rational_root(const Int& I, const Int& J);
bool quartic_irreducible(const QuarticForm& f);
// Generic: irreducible over Q with irreducible resolvent cubic.
bool is_generic(const QuarticForm& f);

// --- parsing / printing -------------------------------------------------

QuarticForm parse_form(const std::string& text);  // "a,b,c,d,e"
std::string form_to_string(const QuarticForm& f);
std::string rat_to_string(const Rat& r);  // "num/den" (or "num" if integral)

}  // namespace qc
