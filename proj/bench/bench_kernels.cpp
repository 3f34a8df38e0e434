// Compares the serial reference kernels against their OpenMP versions:
// Green's function grid evaluation and Nystrom matrix assembly.

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "prabhakar/bvp_spectral.hpp"
#include "prabhakar/greens_function.hpp"

using namespace prabhakar;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

template <typename F>
double best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now();
    fn();
    const double dt = now() - t0;
    if (dt < best) best = dt;
  }
  return best;
}

}  // namespace

int main() {
  const greens::BVPConfig cfg{0.0, 1.0, 0.5, 0.05, {1.0, 2.5, 0.5, 0.3, 0.0}};
  auto q = [](double s) { return 1.0 + s; };

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  {
    const greens::GreenFn g(cfg);
    const auto nodes = greens::chebyshev_nodes(0.0, 1.0, 200);
    volatile double sink = 0.0;
    const double ts = best_of(3, [&] {
      sink = greens::green_grid_values(g, nodes, nodes, Exec::serial)[0];
    });
    const double tp = best_of(3, [&] {
      sink = greens::green_grid_values(g, nodes, nodes, Exec::openmp)[0];
    });
    (void)sink;
    std::printf("green grid 200x200   serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
                ts * 1e3, tp * 1e3, ts / tp);
  }

  {
    volatile double sink = 0.0;
    const double ts = best_of(3, [&] {
      sink = spectral::build_operator(cfg, q, 400, Exec::serial).matrix[1];
    });
    const double tp = best_of(3, [&] {
      sink = spectral::build_operator(cfg, q, 400, Exec::openmp).matrix[1];
    });
    (void)sink;
    std::printf("assembly n=400       serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
                ts * 1e3, tp * 1e3, ts / tp);
  }
  return 0;
}
