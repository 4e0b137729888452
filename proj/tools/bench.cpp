// Benchmark comparing the rolling horizon kernels (serial and OpenMP) with
// the naive per-lead reference implementation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sspred/criteria.hpp"
#include "sspred/models.hpp"
#include "sspred/reference.hpp"

using namespace sspred;

namespace {

Series synthetic_series(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> y(n);
  double trend = 0.0, slope = 0.02;
  for (std::size_t i = 0; i < n; ++i) {
    slope += 0.005 * noise(rng);
    trend += slope;
    const double seasonal = 3.0 * std::sin(2.0 * M_PI * static_cast<double>(i) / 12.0);
    y[i] = trend + seasonal + noise(rng);
  }
  return Series::from_values(std::move(y));
}

template <typename Fn>
double time_best_ms(Fn&& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

double checksum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void bench_case(const char* name, const ModelSpec& spec, std::size_t n, std::size_t j_max) {
  const Series y = synthetic_series(n, 42);
  const StateSpaceModel model = compose(spec);
  const std::size_t burn = static_cast<std::size_t>(spec.state_dim());

  std::vector<double> serial_out, parallel_out, reference_out;
  const double t_ref = time_best_ms(
      [&] { reference_out = reference::horizon_error_variances(model, y, j_max, burn); }, 3);
  const double t_serial = time_best_ms(
      [&] {
        serial_out = horizon_error_variances(model, y, j_max, burn, ExecMode::serial);
      },
      5);
  const double t_parallel = time_best_ms(
      [&] {
        parallel_out = horizon_error_variances(model, y, j_max, burn, ExecMode::parallel);
      },
      5);

  const bool bitwise_equal = serial_out == parallel_out;
  double ref_gap = 0.0;
  for (std::size_t j = 0; j < j_max; ++j)
    ref_gap = std::max(ref_gap,
                       std::abs(serial_out[j] - reference_out[j]) /
                           (1.0 + std::abs(reference_out[j])));

  std::printf("%-24s N=%-5zu k=%-2d j_max=%-3zu | reference %9.2f ms | serial %9.2f ms | "
              "parallel %9.2f ms | speedup %.2fx | serial==parallel %s | vs-ref %.1e | "
              "checksum %.6g\n",
              name, n, spec.state_dim(), j_max, t_ref, t_serial, t_parallel,
              t_serial / t_parallel, bitwise_equal ? "yes" : "NO", ref_gap,
              checksum(parallel_out));
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel mode runs serially\n");
#endif

  ModelSpec trend2;
  trend2.m1 = 2;

  ModelSpec seasonal;
  seasonal.m1 = 2;
  seasonal.m2 = 1;
  seasonal.period = 12;

  ModelSpec full;
  full.m1 = 2;
  full.m2 = 1;
  full.period = 12;
  full.m3 = 2;
  full.theta.ar_pacs = {0.3, -0.2};
  full.theta.tau3_sq = 0.5;

  bench_case("trend order 2", trend2, 486, 20);
  bench_case("trend order 2", trend2, 4000, 24);
  bench_case("trend + seasonal", seasonal, 156, 24);
  bench_case("trend + seasonal", seasonal, 2000, 24);
  bench_case("trend + seasonal + AR", full, 156, 24);
  bench_case("trend + seasonal + AR", full, 2000, 24);
  return 0;
}
