#pragma once
// Local (p-adic) invariants of integral binary quartic forms: splitting types
// mod p, slice densities, resolvent maximality, local solubility of z^2 = f(x,y)
// over Q_p, and the local mass m_p counting integral PGL2(Z_p)-orbit classes.
#include "qc/forms.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qc {

struct SplittingType {
  bool zero = false;                          // f == 0 mod p
  std::vector<std::pair<int, int>> parts;     // (degree, multiplicity), sorted
  int index() const;                          // sum (mult - 1) * degree
  bool has_multiple_factor() const;
  std::string name() const;                   // "(1111)", "(1^211)", "(0)", ...
  bool operator==(const SplittingType&) const = default;
};

// Splitting type of f mod p (p prime, fits in 63 bits).
SplittingType splitting_type(const QuarticForm& f, std::uint64_t p);
SplittingType splitting_type_mod(const std::uint64_t co[5], std::uint64_t p);

// Positions of multiple roots of f mod p in P^1(F_p): pairs (x0, y0) with
// y0 = 1 for affine roots and (1, 0) for the root at infinity.  Multiple
// irreducible quadratic factors have no F_p-rational root and do not appear.
std::vector<std::pair<std::uint64_t, std::uint64_t>> multiple_roots_modp(
    const std::uint64_t co[5], std::uint64_t p);

// Closed-form splitting-type density in V(Z_p), p >= 3; key is name().
Rat density_splitting(const std::string& sigma, std::uint64_t p);
// Brute force over V(F_p); returns name -> count/p^5.  Serial and OpenMP
// variants must agree exactly.
std::map<std::string, Rat> splitting_density_bruteforce(std::uint64_t p,
                                                        bool parallel);

// Resolvent maximality at p: no multiple F_p-rational root r of f mod p has
// p^2 | f(r~) for a primitive lift r~; splitting types (1^21^2), (2^2), (1^4)
// and (0) are never strongly maximal.
bool is_resolvent_maximal_at(const QuarticForm& f, std::uint64_t p);

// Slice densities nu_{p^k}(phi) on V(Z_p)_a with a = p^k * unit: rows are
// "(1111)" ... "(1^4)" and "max:(1^211)", "max:(1^22)", "max:(1^31)".
// Closed forms valid for p >= 3; k >= 2 is k-independent.
Rat density_slice(const std::string& row, std::uint64_t p, int k);
// Brute force: count over (b,c,d,e) mod p^2 with leading coefficient p^k*unit;
// returns row -> count/p^8 (also includes the "(0)" row).
std::map<std::string, Rat> slice_density_bruteforce(std::uint64_t p, int k,
                                                    bool parallel,
                                                    std::uint64_t unit = 1);

// --- solubility ---------------------------------------------------------

// z^2 = f(x,y) has a nontrivial Q_p-point.  Requires disc(f) != 0.
// max_extra_depth: additional residue-disc levels explored beyond the
// certified bound floor(v_p(disc)/2) (+1 for p = 2); the default suffices
// by the discriminant-congruence bound.
bool lp_soluble(const QuarticForm& f, const Int& p);
bool lp_soluble_depth(const QuarticForm& f, const Int& p, int max_depth);
bool linf_soluble(const QuarticForm& f);

// --- local mass ---------------------------------------------------------

// Number of level-k Hermite representatives [[p^a, b], [0, p^(k-a)]] whose
// twisted action keeps f integral; (p+1)p^(k-1) representatives for k >= 1.
long mp_level(const QuarticForm& f, const Int& p, int k);
long hermite_rep_count(const Int& p, int k);
// m_p = sum over k >= 0 of mp_level; levels vanish once p^{2k} does not
// divide disc(f).
Int mp_total(const QuarticForm& f, const Int& p);

struct LocalWeight {
  int ell;                                   // 0/1 product of local solubilities
  Int m;                                     // product of local masses
  std::vector<std::pair<Int, int>> disc_factors;
};
// Requires disc(f) != 0; factorizes disc(f).
LocalWeight global_weights(const QuarticForm& f);

}  // namespace qc
