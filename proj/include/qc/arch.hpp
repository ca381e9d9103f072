#pragma once
// Archimedean quantities: real periods of the elliptic curves
// y^2 = x^3 - (I/3) x - (J/27) via AGM with an adaptive-quadrature oracle,
// and the four region constants obtained by integrating periods (or 1) over
// the height-below-1 box in the (I, J) plane.
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qc {

struct DegenerateDiscriminant : std::runtime_error {
  explicit DegenerateDiscriminant(const std::string& m)
      : std::runtime_error(m) {}
};
struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& m) : std::runtime_error(m) {}
};

enum class PeriodMethod { agm, quadrature };

struct PeriodValue {
  double value = 0;
  PeriodMethod method = PeriodMethod::agm;
  double error_estimate = 0;  // |agm - quadrature| (plus float slack)
};

// Integral of dx/y over the full y > 0 real locus (both components when the
// curve discriminant (4I^3 - J^2)/27 is positive).  AGM on the real root
// configuration; the quadrature routine is the independent oracle.
double real_period_agm(double I, double J);
double real_period_quadrature(double I, double J);
// AGM value cross-checked against quadrature; throws DegenerateDiscriminant
// on (4I^3 - J^2) = 0 and NonConvergence when the methods disagree.
PeriodValue real_period(double I, double J);

// omega_tilde(I, J) = period(I, J) + period(I, -J); symmetric in J.
PeriodValue omega_tilde(double I, double J);

// The period to `digits` significant digits (>= 50 supported) computed with
// MPFR AGM on refined roots; returned as a decimal string.
std::string real_period_digits(double I, double J, int digits);

enum class RegionName { C56_pos, C56_neg, C34_pos, C34_neg };
std::string region_name(RegionName n);

struct RegionConstant {
  std::string name;
  double value = 0;          // primary method
  double value_b = 0;        // independent cross-check method
  std::string method_a, method_b;
  double error_estimate = 0;  // |value - value_b|
};

struct RegionOptions {
  int levels = 9;             // tanh-sinh refinement levels
  long mc_samples = 10000000;  // Monte Carlo cross-check sample count
  std::uint64_t seed = 20240824;
  bool parallel = true;
};

// C56_*: area of {|I| < 1, |J| < 2, sign disc} (closed forms 8/5 and 32/5,
// cross-checked by quadrature).  C34_*: integral of omega_tilde over the
// same regions (tanh-sinh quadrature, stratified Monte Carlo cross-check).
RegionConstant region_constant(RegionName name, const RegionOptions& opt = {});

double zeta_half();  // zeta(1/2)
double zeta_two();   // zeta(2) = pi^2 / 6

}  // namespace qc
