#pragma once
// Orbit counting by height with weights, two-term asymptotic comparison,
// Selmer-group averages over families of elliptic curves, and partial
// Dirichlet series built from leading-coefficient slice densities.
#include "qc/forms.hpp"
#include "qc/reduce.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qc {

struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& m) : std::runtime_error(m) {}
};

// Weight phi evaluated on an orbit representative:
//   one                 - constant 1 (plain orbit count)
//   ell_over_m          - local solubility indicator / product of local masses
//   splitting_indicator - 1 iff the splitting type of f mod p equals sigma
enum class WeightKind { one, ell_over_m, splitting_indicator };

struct WeightSpec {
  WeightKind kind = WeightKind::one;
  std::uint64_t p = 0;  // prime for splitting_indicator
  std::string sigma;    // splitting-type name, e.g. "(1111)"
};
std::string weight_name(const WeightSpec& w);

struct CountPoint {
  double X = 0;        // checkpoint height bound (counts use H < X strictly)
  long raw = 0;        // unweighted orbit count
  double weighted = 0; // sum of phi over the same orbits
};

struct CountSeries {
  SignatureClass cls = SignatureClass::c0;
  OrbitFilter filter = OrbitFilter::irreducible;
  WeightSpec weight;
  std::vector<CountPoint> points;  // increasing geometric grid of X values
};

// Cumulative counts of orbits of signature class `cls` at a geometric grid of
// checkpoints ending at X (checkpoints_per_decade points per factor of 10,
// starting at max(100, X/10^4)).  A single enumeration at the top height
// feeds every checkpoint.
CountSeries count_orbits(SignatureClass cls, const Int& X,
                         const WeightSpec& phi = {},
                         OrbitFilter filter = OrbitFilter::irreducible,
                         const EnumOptions& opt = {},
                         int checkpoints_per_decade = 4);

// Checkpoint series built from an already-enumerated (and already-filtered)
// orbit list; `filter` only labels the output.
std::vector<CountSeries> count_from_records(
    const std::vector<OrbitRecord>& orbits, const Int& X,
    const WeightSpec& phi, OrbitFilter filter, bool parallel,
    int checkpoints_per_decade = 4);

// Same grid for all four signature classes from one enumeration pass.
std::vector<CountSeries> count_orbits_all(const Int& X,
                                          const WeightSpec& phi = {},
                                          OrbitFilter filter =
                                              OrbitFilter::irreducible,
                                          const EnumOptions& opt = {},
                                          int checkpoints_per_decade = 4);

// CSV with versioned header (schema "qc1"); columns X, class, filter, raw,
// weighted.  Floats carry 12 significant digits.
std::string count_series_csv(const std::vector<CountSeries>& series);

// --- two-term asymptotic -------------------------------------------------

// sigma_0 = sigma_2± = 4, sigma_1 = 2.
double sigma_class(SignatureClass cls);
// Leading coefficient 2 zeta(2) C56 / (27 sigma); C56 by discriminant sign
// of the class (positive for classes 0 and 2±, negative for class 1).
double primary_coefficient(SignatureClass cls);
// Second coefficient zeta(1/2) C34 / (108 sigma); negative.
double secondary_coefficient(SignatureClass cls);
// c1 X^(5/6) + c2 X^(3/4) with the coefficients above.
double two_term_prediction(SignatureClass cls, double X);

struct FitResult {
  double c1_hat = 0, c2_hat = 0;       // least-squares fit
  double c1_theory = 0, c2_theory = 0; // predicted coefficients
  double residual_exponent = 0;        // slope of log|residual| vs log X
  std::vector<double> residuals;       // count - fit, per checkpoint
};

// Least squares of the weighted counts against c1 X^(5/6) + c2 X^(3/4)
// (weighted equals raw for the constant weight).  Requires at
// least 8 checkpoints spanning at least two decades (InsufficientData).
FitResult fit_terms(const CountSeries& series);
std::string fit_report_json(const CountSeries& series, const FitResult& fit);

// --- Selmer averages -----------------------------------------------------

struct CurveSelmer {
  long A = 0, B = 0;      // y^2 = x^3 + A x + B, minimal model
  Int I, J;               // invariants of the quartic fiber: (-48A, -1728B)
  double curve_height = 0;  // max(4|A|^3, 27 B^2)
  int orbit_count = 0;    // generic orbits in the fiber
  double selmer = 0;      // |Sel_2| = 1 + sum ell(f)/m(f)
};

struct SelmerSummary {
  long curve_count = 0;       // trivial-2-torsion curves included in the sum
  long torsion_excluded = 0;  // curves with a rational 2-torsion point
  double selmer_total = 0;
  std::vector<CurveSelmer> curves;     // sorted by (curve_height, A, B)
  std::vector<double> torsion_heights; // heights of the excluded curves
  double average() const {
    return curve_count ? selmer_total / static_cast<double>(curve_count) : 0;
  }
  // Restriction to curve_height < x (prefix of the sorted curve list).
  SelmerSummary below(double x) const;
};

// Enumerates minimal curves y^2 = x^3 + A x + B (no prime with p^4 | A and
// p^6 | B) of height max(4|A|^3, 27 B^2) < X whose discriminant has the
// requested sign (+1 or -1) and whose 2-torsion is trivial; for each curve
// computes |Sel_2| = 1 + sum over generic quartic orbits with invariants
// (-48A, -1728B) of ell(f)/m(f).
SelmerSummary selmer_sum(const Int& X, int sign, const EnumOptions& opt = {});

// --- partial Dirichlet series -------------------------------------------

// D(phi, s) = sum_{a > 0} nu_{sign * a}(phi) / a^s where nu_a is the density
// of phi on the slice of forms with leading coefficient a.  For s > 1 the
// truncated sum over a <= A_max is returned; for 0 < s <= 1 (off the pole
// at s = 1) the value is computed from the Euler product: nu_a depends only
// on the p-adic valuation of a, with the k >= 2 slice densities constant,
// so the local factor is a finite sum plus a closed-form geometric tail.
// Throws NonConvergence for s <= 0 or s == 1.
double dirichlet_partial(const WeightSpec& phi, int sign, double s,
                         long A_max);

}  // namespace qc
