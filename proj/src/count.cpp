#include "qc/count.hpp"

#include "qc/arch.hpp"
#include "qc/integers.hpp"
#include "qc/localp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mpfr.h>
#include <omp.h>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace qc {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double weight_value(const OrbitRecord& r, const WeightSpec& w) {
  switch (w.kind) {
    case WeightKind::one:
      return 1.0;
    case WeightKind::ell_over_m: {
      LocalWeight lw = global_weights(r.rep);
      if (lw.ell == 0) return 0.0;
      return 1.0 / lw.m.get_d();
    }
    case WeightKind::splitting_indicator:
      return splitting_type(r.rep, w.p).name() == w.sigma ? 1.0 : 0.0;
  }
  return 0.0;
}

// geometric checkpoint grid ending exactly at X
std::vector<Int> checkpoint_grid(const Int& X, int per_decade) {
  if (per_decade < 1) throw std::invalid_argument("checkpoints_per_decade");
  double top = X.get_d();
  double lo = std::max(100.0, top / 1e4);
  std::vector<Int> grid{X};
  double step = std::pow(10.0, 1.0 / per_decade);
  for (double v = top / step; v >= lo * 0.999; v /= step)
    grid.push_back(Int(static_cast<long>(std::llround(v))));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double c56_of(SignatureClass cls) {
  // positive-discriminant area constant for the definite/two-component
  // classes, negative-discriminant constant for the indefinite class
  return cls == SignatureClass::c1 ? 32.0 / 5.0 : 8.0 / 5.0;
}

double c34_of(SignatureClass cls) {
  static const double pos =
      region_constant(RegionName::C34_pos).value;
  static const double neg =
      region_constant(RegionName::C34_neg).value;
  return cls == SignatureClass::c1 ? neg : pos;
}

double zeta_at(double s) {
  mpfr_t z, sv;
  mpfr_init2(z, 128);
  mpfr_init2(sv, 128);
  mpfr_set_d(sv, s, MPFR_RNDN);
  mpfr_zeta(z, sv, MPFR_RNDN);
  double out = mpfr_get_d(z, MPFR_RNDN);
  mpfr_clear(z);
  mpfr_clear(sv);
  return out;
}

}  // namespace

std::string weight_name(const WeightSpec& w) {
  switch (w.kind) {
    case WeightKind::one:
      return "one";
    case WeightKind::ell_over_m:
      return "ell_over_m";
    case WeightKind::splitting_indicator:
      return "split[" + w.sigma + "@" + std::to_string(w.p) + "]";
  }
  return "?";
}

std::vector<CountSeries> count_from_records(
    const std::vector<OrbitRecord>& orbits, const Int& X,
    const WeightSpec& phi, OrbitFilter filter, bool parallel,
    int checkpoints_per_decade) {
  std::vector<Int> grid = checkpoint_grid(X, checkpoints_per_decade);
  std::vector<CountSeries> out(4);
  const SignatureClass classes[4] = {SignatureClass::c0, SignatureClass::c1,
                                     SignatureClass::c2plus,
                                     SignatureClass::c2minus};
  for (int i = 0; i < 4; ++i) {
    out[i].cls = classes[i];
    out[i].filter = filter;
    out[i].weight = phi;
    out[i].points.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
      out[i].points[j].X = grid[j].get_d();
  }
  // bucket each orbit at the first checkpoint whose bound exceeds its height,
  // then prefix-sum; weights evaluated in parallel, merged in orbit order
  std::vector<double> wv(orbits.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < orbits.size(); ++i)
      wv[i] = weight_value(orbits[i], phi);
  } else {
    for (std::size_t i = 0; i < orbits.size(); ++i)
      wv[i] = weight_value(orbits[i], phi);
  }
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const OrbitRecord& r = orbits[i];
    int ci = static_cast<int>(r.cls);
    // first grid index with height < grid value (exact rational comparison)
    std::size_t j = 0;
    while (j < grid.size() &&
           !(r.height.get_num() < grid[j] * r.height.get_den()))
      ++j;
    if (j == grid.size()) continue;  // height == top bound boundary; excluded
    out[ci].points[j].raw += 1;
    out[ci].points[j].weighted += wv[i];
  }
  for (auto& s : out)
    for (std::size_t j = 1; j < s.points.size(); ++j) {
      s.points[j].raw += s.points[j - 1].raw;
      s.points[j].weighted += s.points[j - 1].weighted;
    }
  return out;
}

std::vector<CountSeries> count_orbits_all(const Int& X, const WeightSpec& phi,
                                          OrbitFilter filter,
                                          const EnumOptions& opt,
                                          int checkpoints_per_decade) {
  return count_from_records(enumerate_orbits(X, filter, opt), X, phi, filter,
                            opt.parallel, checkpoints_per_decade);
}

CountSeries count_orbits(SignatureClass cls, const Int& X,
                         const WeightSpec& phi, OrbitFilter filter,
                         const EnumOptions& opt, int checkpoints_per_decade) {
  auto all = count_orbits_all(X, phi, filter, opt, checkpoints_per_decade);
  return all[static_cast<int>(cls)];
}

std::string count_series_csv(const std::vector<CountSeries>& series) {
  std::ostringstream os;
  os << "# qc1\n";
  os << "X,class,filter,raw,weighted\n";
  auto filter_name = [](OrbitFilter f) {
    switch (f) {
      case OrbitFilter::all:
        return "all";
      case OrbitFilter::irreducible:
        return "irreducible";
      case OrbitFilter::generic:
        return "generic";
    }
    return "?";
  };
  for (const CountSeries& s : series)
    for (const CountPoint& p : s.points)
      os << fmt12(p.X) << ',' << class_name(s.cls) << ','
         << filter_name(s.filter) << ',' << p.raw << ','
         << fmt12(p.weighted) << '\n';
  return os.str();
}

double sigma_class(SignatureClass cls) {
  return cls == SignatureClass::c1 ? 2.0 : 4.0;
}

double primary_coefficient(SignatureClass cls) {
  return 2.0 * zeta_two() * c56_of(cls) / (27.0 * sigma_class(cls));
}

double secondary_coefficient(SignatureClass cls) {
  return zeta_half() * c34_of(cls) / (108.0 * sigma_class(cls));
}

double two_term_prediction(SignatureClass cls, double X) {
  return primary_coefficient(cls) * std::pow(X, 5.0 / 6.0) +
         secondary_coefficient(cls) * std::pow(X, 3.0 / 4.0);
}

FitResult fit_terms(const CountSeries& series) {
  const auto& pts = series.points;
  if (pts.size() < 8) throw InsufficientData("need at least 8 checkpoints");
  if (pts.back().X < 100.0 * pts.front().X)
    throw InsufficientData("checkpoints must span two decades");
  // 2x2 normal equations for count ~ c1 X^(5/6) + c2 X^(3/4)
  long double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  for (const CountPoint& p : pts) {
    long double u = std::pow((long double)p.X, 5.0L / 6.0L);
    long double v = std::pow((long double)p.X, 3.0L / 4.0L);
    s11 += u * u;
    s12 += u * v;
    s22 += v * v;
    b1 += u * (long double)p.weighted;
    b2 += v * (long double)p.weighted;
  }
  long double det = s11 * s22 - s12 * s12;
  if (det == 0) throw InsufficientData("degenerate design matrix");
  FitResult r;
  r.c1_hat = static_cast<double>((b1 * s22 - b2 * s12) / det);
  r.c2_hat = static_cast<double>((s11 * b2 - s12 * b1) / det);
  r.c1_theory = primary_coefficient(series.cls);
  r.c2_theory = secondary_coefficient(series.cls);
  // slope of log|residual| against log X over informative checkpoints
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (const CountPoint& p : pts) {
    double res = p.weighted - (r.c1_hat * std::pow(p.X, 5.0 / 6.0) +
                          r.c2_hat * std::pow(p.X, 3.0 / 4.0));
    r.residuals.push_back(res);
    if (std::fabs(res) < 1.0) continue;
    long double lx = std::log((long double)p.X);
    long double ly = std::log((long double)std::fabs(res));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  r.residual_exponent =
      n >= 2 ? static_cast<double>((n * sxy - sx * sy) / (n * sxx - sx * sx))
             : 0.0;
  return r;
}

std::string fit_report_json(const CountSeries& series, const FitResult& fit) {
  nlohmann::json j;
  j["class"] = class_name(series.cls);
  j["weight"] = weight_name(series.weight);
  j["c1_hat"] = fit.c1_hat;
  j["c1_theory"] = fit.c1_theory;
  j["c2_hat"] = fit.c2_hat;
  j["c2_theory"] = fit.c2_theory;
  j["residual_exponent"] = fit.residual_exponent;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const CountPoint& p = series.points[i];
    nlohmann::json row;
    row["X"] = p.X;
    row["raw"] = p.raw;
    row["weighted"] = p.weighted;
    row["two_term_prediction"] = two_term_prediction(series.cls, p.X);
    row["fit_residual"] = fit.residuals[i];
    rows.push_back(row);
  }
  j["checkpoints"] = rows;
  return j.dump(2);
}

// --- Selmer --------------------------------------------------------------

SelmerSummary SelmerSummary::below(double x) const {
  SelmerSummary out;
  for (const CurveSelmer& c : curves)
    if (c.curve_height < x) {
      out.curves.push_back(c);
      out.curve_count += 1;
      out.selmer_total += c.selmer;
    }
  for (double h : torsion_heights)
    if (h < x) out.torsion_excluded += 1;
  out.torsion_heights = torsion_heights;
  return out;
}

namespace {

bool curve_minimal(long A, long B) {
  // minimal model: no prime p with p^4 | A and p^6 | B
  if (A == 0) {
    for (const auto& [p, e] : factorize(Int(B)))
      if (e >= 6) return false;
    return true;
  }
  for (const auto& [p, e] : factorize(Int(A))) {
    if (e < 4) continue;
    if (B == 0) return false;
    Int p6 = pow_int(p, 6);
    if (mpz_divisible_p(Int(B).get_mpz_t(), p6.get_mpz_t())) return false;
  }
  return true;
}

}  // namespace

SelmerSummary selmer_sum(const Int& X, int sign, const EnumOptions& opt) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  if (!X.fits_slong_p()) throw std::invalid_argument("height bound too large");
  const long x = X.get_si();
  long Amax = static_cast<long>(std::cbrt(x / 4.0)) + 2;
  long Bmax = static_cast<long>(std::sqrt(x / 27.0)) + 2;
  SelmerSummary out;
  std::vector<std::pair<long, long>> eligible;
  for (long A = -Amax; A <= Amax; ++A)
    for (long B = -Bmax; B <= Bmax; ++B) {
      __int128 d = (__int128)4 * A * A * A + (__int128)27 * B * B;
      if (d == 0) continue;  // singular
      __int128 h4 = (__int128)4 * (A < 0 ? -A : A) * A * A * (A < 0 ? -1 : 1);
      if (h4 < 0) h4 = -h4;
      __int128 h = std::max(h4, (__int128)27 * B * B);
      if (h >= x) continue;
      int s = d < 0 ? 1 : -1;  // curve discriminant -16(4A^3+27B^2)
      if (s != sign) continue;
      if (!curve_minimal(A, B)) continue;
      Int I = Int(-48) * A, J = Int(-1728) * B;
      if (cubic_has_rational_root(I, J)) {
        out.torsion_heights.push_back(static_cast<double>((long)h));
        continue;
      }
      eligible.emplace_back(A, B);
    }
  out.torsion_excluded = static_cast<long>(out.torsion_heights.size());
  std::vector<CurveSelmer> res(eligible.size());
  EnumOptions fiber_opt = opt;
  fiber_opt.parallel = false;  // parallelism over curves
  auto run_curve = [&](std::size_t i) {
    auto [A, B] = eligible[i];
    CurveSelmer c;
    c.A = A;
    c.B = B;
    c.I = Int(-48) * A;
    c.J = Int(-1728) * B;
    long h4 = 4 * std::labs(A) * A * A * (A < 0 ? -1 : 1);
    c.curve_height = static_cast<double>(std::max(std::labs(h4), 27 * B * B));
    Rat sel = 1;
    for (const OrbitRecord& r : enumerate_fiber(c.I, c.J, fiber_opt)) {
      if (!r.generic) continue;
      c.orbit_count += 1;
      LocalWeight w = global_weights(r.rep);
      if (w.ell) sel += Rat(1) / Rat(w.m);
    }
    c.selmer = sel.get_d();
    res[i] = c;
  };
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < eligible.size(); ++i) run_curve(i);
  } else {
    for (std::size_t i = 0; i < eligible.size(); ++i) run_curve(i);
  }
  std::sort(res.begin(), res.end(), [](const CurveSelmer& a,
                                       const CurveSelmer& b) {
    return std::tie(a.curve_height, a.A, a.B) <
           std::tie(b.curve_height, b.A, b.B);
  });
  std::sort(out.torsion_heights.begin(), out.torsion_heights.end());
  out.curves = std::move(res);
  out.curve_count = static_cast<long>(out.curves.size());
  for (const CurveSelmer& c : out.curves) out.selmer_total += c.selmer;
  return out;
}

// --- Dirichlet series ----------------------------------------------------

double dirichlet_partial(const WeightSpec& phi, int sign, double s,
                         long A_max) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  if (phi.kind == WeightKind::ell_over_m)
    throw std::invalid_argument(
        "slice densities are only available for constant and splitting-type "
        "weights");
  // slice density nu_a depends only on v_p(a) (and is invariant under unit
  // scaling of a, so both signs give the same value)
  auto nu_pk = [&](int k) -> double {
    if (phi.kind == WeightKind::one) return 1.0;
    return density_slice(phi.sigma, phi.p, std::min(k, 2)).get_d();
  };
  if (s > 1.0) {
    if (A_max < 1) throw std::invalid_argument("A_max must be positive");
    double sum = 0;
    for (long a = 1; a <= A_max; ++a) {
      int k = phi.kind == WeightKind::one
                  ? 0
                  : valuation_ll(a, static_cast<long long>(phi.p));
      sum += nu_pk(k) / std::pow(static_cast<double>(a), s);
    }
    return sum;
  }
  if (s <= 0.0 || s == 1.0)
    throw NonConvergence("supported ranges are s > 1 and 0 < s < 1");
  // Euler product: zeta(s) with the factor at p replaced by the slice-density
  // series; the constant k >= 2 densities sum as a geometric tail
  double z = zeta_at(s);
  if (phi.kind == WeightKind::one) return z;
  double ps = std::pow(static_cast<double>(phi.p), -s);
  double local =
      nu_pk(0) + nu_pk(1) * ps + nu_pk(2) * ps * ps / (1.0 - ps);
  return z * (1.0 - ps) * local;
}

}  // namespace qc
