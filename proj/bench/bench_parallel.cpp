// Serial reference versus the OpenMP kernels: verify-all and the
// supercongruence scan. Checks that both paths agree before timing.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "hgv/congruence.hpp"
#include "hgv/registry.hpp"

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, s);
  }
  return best;
}

void row(const std::string& name, double serial, double parallel) {
  std::cout << std::left << std::setw(24) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(10) << serial << std::setw(10) << parallel
            << std::setw(9) << std::setprecision(2) << serial / parallel << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  const long digits = argc > 1 ? std::atol(argv[1]) : 30;
  const long pmax = argc > 2 ? std::atol(argv[2]) : 1000;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 3;

  const auto a = hgv::verify_all(digits);
  const auto b = hgv::verify_all_serial(digits);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].status != b[j].status || a[j].lhs.value.to_fixed(static_cast<int>(digits)) !=
                                          b[j].lhs.value.to_fixed(static_cast<int>(digits))) {
      std::cerr << "verify-all mismatch at " << a[j].id << '\n';
      return 1;
    }
  }
  const auto sa = hgv::scan(pmax);
  const auto sb = hgv::scan_serial(pmax);
  for (std::size_t j = 0; j < sa.size(); ++j) {
    if (sa[j].p != sb[j].p || sa[j].lhs != sb[j].lhs || sa[j].rhs != sb[j].rhs) {
      std::cerr << "scan mismatch at p=" << sa[j].p << '\n';
      return 1;
    }
  }

  std::cout << "threads " << omp_get_max_threads() << ", digits " << digits << ", pmax " << pmax
            << ", best of " << reps << "\n";
  std::cout << std::left << std::setw(24) << "kernel" << std::right << std::setw(10) << "serial_s"
            << std::setw(10) << "omp_s" << std::setw(10) << "speedup" << '\n';
  row("verify-all (" + std::to_string(a.size()) + ")",
      best_of(reps, [&] { hgv::verify_all_serial(digits); }),
      best_of(reps, [&] { hgv::verify_all(digits); }));
  row("scan (" + std::to_string(sa.size()) + ")", best_of(reps, [&] { hgv::scan_serial(pmax); }),
      best_of(reps, [&] { hgv::scan(pmax); }));
  return 0;
}
