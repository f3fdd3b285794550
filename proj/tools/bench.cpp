// Serial vs OpenMP throughput for the two hot kernels: per-user featurization
// and forest training. The parallel paths are required to produce bit-equal
// results, which is asserted here before timing.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ueba/eval.hpp"
#include "ueba/features.hpp"
#include "ueba/forest.hpp"
#include "ueba/inject.hpp"
#include "ueba/syngen.hpp"

using namespace ueba;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  size_t users = 40;
  size_t days = 8;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--users") == 0) users = std::stoul(argv[i + 1]);
    if (std::strcmp(argv[i], "--days") == 0) days = std::stoul(argv[i + 1]);
  }

#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: not available, parallel runs fall back to serial\n");
#endif

  GeneratorConfig gen;
  gen.users = users;
  gen.days = days;
  gen.seed = 7;
  auto streams = generate(gen);
  InjectionConfig inj;
  inj.rng_seed = 7;
  auto report = inject(streams, inj);
  size_t n_events = 0;
  for (const auto& s : streams) n_events += s.events.size();
  std::printf("corpus: %zu users, %zu events, %zu incidents\n\n", streams.size(), n_events,
              report.intervals.size());

  FeaturizeConfig fc;
  fc.parallel = false;
  auto t0 = std::chrono::steady_clock::now();
  auto ds_serial = featurize(streams, report.intervals, fc);
  double serial_s = seconds_since(t0);

  fc.parallel = true;
  t0 = std::chrono::steady_clock::now();
  auto ds_parallel = featurize(streams, report.intervals, fc);
  double parallel_s = seconds_since(t0);

  if (ds_serial.values != ds_parallel.values || ds_serial.labels != ds_parallel.labels) {
    std::fprintf(stderr, "FATAL: parallel featurize differs from serial\n");
    return 1;
  }

  std::printf("featurize  serial:   %8.3fs  (%.0f events/s)\n", serial_s,
              static_cast<double>(n_events) / serial_s);
  std::printf("featurize  openmp:   %8.3fs  (%.0f events/s)  speedup %.2fx\n\n", parallel_s,
              static_cast<double>(n_events) / parallel_s, serial_s / parallel_s);

  auto cols = ds_serial.column_group("combined");
  Matrix m(ds_serial.n_rows, cols.size());
  for (size_t r = 0; r < ds_serial.n_rows; ++r)
    for (size_t j = 0; j < cols.size(); ++j) m.at(r, j) = ds_serial.at(r, cols[j]);

  ForestConfig fcfg;
  fcfg.rng_seed = 7;
  fcfg.parallel = false;
  t0 = std::chrono::steady_clock::now();
  RandomForest serial_forest;
  serial_forest.fit(m, ds_serial.labels, fcfg);
  double train_serial = seconds_since(t0);

  fcfg.parallel = true;
  t0 = std::chrono::steady_clock::now();
  RandomForest parallel_forest;
  parallel_forest.fit(m, ds_serial.labels, fcfg);
  double train_parallel = seconds_since(t0);

  auto p_serial = serial_forest.predict_proba(m);
  auto p_parallel = parallel_forest.predict_proba(m);
  if (p_serial != p_parallel) {
    std::fprintf(stderr, "FATAL: parallel forest differs from serial\n");
    return 1;
  }

  std::printf("forest fit serial:   %8.3fs  (%zu rows x %zu features, %zu trees)\n",
              train_serial, m.rows, m.cols, fcfg.n_trees);
  std::printf("forest fit openmp:   %8.3fs  speedup %.2fx\n", train_parallel,
              train_serial / train_parallel);
  return 0;
}
