// Benchmark of the OpenMP kernels against their serial counterparts, plus
// the pruned fiber enumeration against the exact reference scan.  Each row
// reports wall-clock times, the speedup, and whether the results agree.
#include "qc/arch.hpp"
#include "qc/count.hpp"
#include "qc/expsums.hpp"
#include "qc/localp.hpp"
#include "qc/reduce.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace qc;

namespace {

double seconds(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const std::string& name, double serial, double parallel, bool match) {
  std::printf("%-42s %9.3fs %9.3fs  x%.2f  %s\n", name.c_str(), serial,
              parallel, parallel > 0 ? serial / parallel : 0.0,
              match ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  long X = argc > 1 ? std::atol(argv[1]) : 20000;
  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%-42s %10s %10s %6s\n", "kernel", "serial", "parallel", "");

  {  // exhaustive splitting-type census over V(F_p)
    std::map<std::string, Rat> a, b;
    double ts = seconds([&] { a = splitting_density_bruteforce(13, false); });
    double tp = seconds([&] { b = splitting_density_bruteforce(13, true); });
    row("splitting census (p=13, 13^5 forms)", ts, tp, a == b);
  }
  {  // slice census over (b..e) mod p^2
    std::map<std::string, Rat> a, b;
    double ts = seconds([&] { a = slice_density_bruteforce(7, 1, false); });
    double tp = seconds([&] { b = slice_density_bruteforce(7, 1, true); });
    row("slice census (p=7, level 1)", ts, tp, a == b);
  }
  {  // orbital exponential sum over PGL2(Z/p^2)
    ModForm f{1, 0, 0, 0, 1}, h{0, 1, 0, 1, 0};
    std::complex<double> a, b;
    double ts = seconds([&] { a = orbital_sum(f, h, 11, 2, false); });
    double tp = seconds([&] { b = orbital_sum(f, h, 11, 2, true); });
    row("orbital sum (p=11, k=2)", ts, tp, std::abs(a - b) < 1e-9);
  }
  {  // Monte Carlo cross-check of the period-volume constant
    RegionOptions opt;
    opt.levels = 6;
    opt.mc_samples = 2000000;
    RegionConstant a, b;
    opt.parallel = false;
    double ts = seconds([&] { a = region_constant(RegionName::C34_pos, opt); });
    opt.parallel = true;
    double tp = seconds([&] { b = region_constant(RegionName::C34_pos, opt); });
    row("region constant C34+ (2e6 MC samples)", ts, tp,
        std::fabs(a.value_b - b.value_b) < 1e-12 && a.value == b.value);
  }
  {  // orbit enumeration by height
    EnumOptions opt;
    std::vector<OrbitRecord> a, b;
    opt.parallel = false;
    double ts =
        seconds([&] { a = enumerate_orbits(Int(X), OrbitFilter::all, opt); });
    opt.parallel = true;
    double tp =
        seconds([&] { b = enumerate_orbits(Int(X), OrbitFilter::all, opt); });
    bool match = a.size() == b.size();
    for (std::size_t i = 0; match && i < a.size(); ++i)
      match = a[i].rep == b[i].rep;
    row("orbit enumeration (X=" + std::to_string(X) + ")", ts, tp, match);
  }
  {  // fiber scan: pruned finite-difference walk vs exact reference
    std::vector<OrbitRecord> a, b;
    double tf = seconds([&] { a = enumerate_fiber(Int(97), Int(1991)); });
    double tr =
        seconds([&] { b = enumerate_fiber_reference(Int(97), Int(1991)); });
    bool match = a.size() == b.size();
    for (std::size_t i = 0; match && i < a.size(); ++i)
      match = a[i].rep == b[i].rep;
    std::printf("%-42s %9.3fs %9.3fs  x%.2f  %s  (fast vs reference)\n",
                "fiber scan (I=97, J=1991)", tr, tf, tf > 0 ? tr / tf : 0.0,
                match ? "match" : "MISMATCH");
  }
  return 0;
}
