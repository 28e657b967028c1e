// Timing comparison of the serial reference kernels against the OpenMP
// versions on growing weighted_diagonal instances.

#include <chrono>
#include <cstdio>

#include "pstar/instances.hpp"

using namespace pstar;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes = {4, 8, 16, 24};
  int reps = 3;
  if (argc > 1) {
    sizes.clear();
    for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  }
  std::printf("%-24s %6s %12s %12s %8s\n", "kernel", "k", "serial_ms",
              "parallel_ms", "speedup");
  for (int k : sizes) {
    Instance inst = build_weighted_diagonal(k, 1);
    const PartialStarAlgebra& a = inst.algebra;
    const double tol = inst.tol;

    double rs = 0, rp = 0;
    AxiomReport serial_rep, parallel_rep;
    rs = time_ms([&] { serial_rep = check_property_A(a, tol, Exec::Serial); },
                 reps);
    rp = time_ms(
        [&] { parallel_rep = check_property_A(a, tol, Exec::Parallel); }, reps);
    if (serial_rep.max_residual != parallel_rep.max_residual)
      std::fprintf(stderr, "property_A: serial/parallel mismatch at k=%d\n", k);
    std::printf("%-24s %6d %12.3f %12.3f %8.2f\n", "property_A", k, rs, rp,
                rs / rp);

    rs = time_ms(
        [&] { serial_rep = check_semi_associative(a, tol, Exec::Serial); },
        reps);
    rp = time_ms(
        [&] { parallel_rep = check_semi_associative(a, tol, Exec::Parallel); },
        reps);
    if (serial_rep.max_residual != parallel_rep.max_residual)
      std::fprintf(stderr, "semi_assoc: serial/parallel mismatch at k=%d\n", k);
    std::printf("%-24s %6d %12.3f %12.3f %8.2f\n", "semi_associative", k, rs,
                rp, rs / rp);

    rs = time_ms(
        [&] { serial_rep = check_involution_compat(a, tol, Exec::Serial); },
        reps);
    rp = time_ms(
        [&] { parallel_rep = check_involution_compat(a, tol, Exec::Parallel); },
        reps);
    std::printf("%-24s %6d %12.3f %12.3f %8.2f\n", "involution_compat", k, rs,
                rp, rs / rp);
  }
  return 0;
}
