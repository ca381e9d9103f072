#pragma once
// Canonical representatives of PGL2(Z)-orbits of integral binary quartics,
// exact equivalence testing, and complete orbit enumeration by height.
#include "qc/forms.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qc {

// Canonical orbit representative: discrete descent minimizing the key
// (|a|,|b|,|c|,|d|,|e|) lexicographically (ties broken by signed lex order)
// over the moves x -> x + k y, y -> y + k x, the swap (x,y) -> (y,x) and the
// sign flip x -> -x, with |k| <= radius; at a local minimum all two-move
// compositions are explored before accepting it.
QuarticForm canonicalize(const QuarticForm& f, int radius = 8);
// Cheap partial reduction used to deduplicate enumeration candidates.
QuarticForm fast_reduce(const QuarticForm& f);

// Exact PGL2(Z)-equivalence decision.  Invariant mismatch is an immediate
// no; matching canonical representatives are an immediate yes; otherwise a
// bounded breadth-first orbit search certifies the answer.
bool are_equivalent(const QuarticForm& f, const QuarticForm& g);

struct OrbitRecord {
  QuarticForm rep;       // canonical representative
  Int I, J, disc;
  Rat height;
  SignatureClass cls;
  bool irreducible = false;
  bool generic = false;
  int stab = 1;          // order of the stabilizer in PGL2(Z)
};

enum class OrbitFilter { all, irreducible, generic };

// Search-region constants.  Every orbit of height < X has a representative
// with 0 < |a| <= ca * X^(1/6), b in (-2|a|, 2|a|] and seminvariant
// |8ac - 3b^2| <= ch * X^(1/3); the bound on b^3 + 8a^2 d - 4abc follows
// from the seminvariant syzygy.  ca and ch are calibrated by doubling until
// the orbit set stabilizes (cross-checked against a naive box search).
struct EnumOptions {
  double ca = 4.0;
  double ch = 24.0;
  int radius = 8;
  bool parallel = true;
  bool classify = true;  // fill cls/irreducible/generic/stab
  std::function<void(long a_done, long a_total)> progress;
};

// All orbits with invariants exactly (I, J) (disc != 0), one record each.
// The fast path prunes the seminvariant scan to the ranges where the syzygy
// right-hand side -27 R^2 is attainable and square-filters the remainder;
// the reference implementation scans the full window with exact big-integer
// arithmetic and is kept for cross-checking.
std::vector<OrbitRecord> enumerate_fiber(const Int& I, const Int& J,
                                         const EnumOptions& opt = {});
std::vector<OrbitRecord> enumerate_fiber_reference(const Int& I, const Int& J,
                                                   const EnumOptions& opt = {});

// All orbits with 0 < H(f) and H(f) < X (disc != 0), filtered; deterministic
// order (sorted by (I, J, rep)).
std::vector<OrbitRecord> enumerate_orbits(const Int& X, OrbitFilter filter,
                                          const EnumOptions& opt = {});

// Reference strategy for cross-checking enumerate_orbits at small X: reduce
// every integral form in the coefficient box |a|,..,|e| <= box with height
// below X and deduplicate.  Exponential in box; use only for validation.
std::vector<QuarticForm> enumerate_orbits_boxsearch(const Int& X, long box,
                                                    int radius = 8);

// Order of the stabilizer of f in PGL2(Z) (entries searched up to radius).
int stabilizer_order(const QuarticForm& f, int radius = 8);

std::string orbit_record_json(const OrbitRecord& r);

}  // namespace qc
