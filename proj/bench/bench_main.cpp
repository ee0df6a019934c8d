// Compares the serial reference implementations with the OpenMP kernels:
// curve combination over the union grid and the betting-game replicate
// loop. Also checks that both paths produce identical results.

#include <chrono>
#include <cstdio>
#include <cstring>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "confid/combine.hpp"
#include "confid/examples.hpp"
#include "confid/game.hpp"
#include "confid/io.hpp"
#include "confid/parametric.hpp"

using namespace confid;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void bench_combine(int repeats) {
  SignificanceCurve f1 = sf_student_t(std::span<const double>(worked::kSample1));
  SignificanceCurve f2 = sf_student_t(std::span<const double>(worked::kSample2));
  SignificanceCurve g1 = sf_normal_direct(worked::kAgentMean1, worked::kAgentSd1);
  SignificanceCurve g2 = sf_normal_direct(worked::kAgentMean2, worked::kAgentSd2);
  const SignificanceCurve curves[] = {f1, f2, g1, g2};

  auto t0 = std::chrono::steady_clock::now();
  double checksum_serial = 0.0;
  for (int i = 0; i < repeats; ++i)
    checksum_serial += combine(curves, Exec::Serial).curve.cdf(-1.0);
  double serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  double checksum_parallel = 0.0;
  for (int i = 0; i < repeats; ++i)
    checksum_parallel += combine(curves, Exec::Parallel).curve.cdf(-1.0);
  double parallel = seconds_since(t0);

  std::printf("combine x%-5d serial %8.3f s   parallel %8.3f s   speedup %.2fx   %s\n",
              repeats, serial, parallel, serial / parallel,
              checksum_serial == checksum_parallel ? "identical" : "MISMATCH");
}

void bench_game(int reps) {
  EstimatorSpec est;
  GameConfig cfg;
  cfg.model = NormalModelSpec{1.0, 1.0, 3};
  cfg.b_suite = default_b_suite();
  cfg.replicates = reps;
  cfg.seed = 20260810;

  auto t0 = std::chrono::steady_clock::now();
  GameReport serial_report = run_game(est, cfg, Exec::Serial);
  double serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  GameReport parallel_report = run_game(est, cfg, Exec::Parallel);
  double parallel = seconds_since(t0);

  bool identical = game_report_json(serial_report).dump() ==
                   game_report_json(parallel_report).dump();
  std::printf("game    x%-5d serial %8.3f s   parallel %8.3f s   speedup %.2fx   %s\n",
              reps, serial, parallel, serial / parallel,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int combine_repeats = 200;
  int game_reps = 20000;
  if (argc > 1) combine_repeats = std::atoi(argv[1]);
  if (argc > 2) game_reps = std::atoi(argv[2]);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; parallel path runs serially\n");
#endif
  bench_combine(combine_repeats);
  bench_game(game_reps);
  return 0;
}
