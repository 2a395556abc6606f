// Times the serial reference kernels against their OpenMP counterparts.
// Build and run: cmake --build build --target polygf_bench && ./build/tools/polygf_bench

#include <chrono>
#include <cstdio>
#include <random>

#include "polygf/biseries.hpp"
#include "polygf/bondsys.hpp"
#include "polygf/ensemble.hpp"
#include "polygf/permcycles.hpp"
#include "polygf/species.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename Fn>
double time_once(Fn&& fn) {
  const double t0 = now_seconds();
  fn();
  return now_seconds() - t0;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-32s serial %8.3fs  parallel %8.3fs  speedup %.2fx\n", name,
              serial, parallel, parallel > 0 ? serial / parallel : 0.0);
}

polygf::BiSeries dense_random(unsigned ox, unsigned oy, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-99, 99);
  std::uniform_int_distribution<int> den(1, 99);
  polygf::BiSeries s(ox, oy);
  for (unsigned i = 0; i <= ox; ++i)
    for (unsigned j = 0; j <= oy; ++j) s.set(i, j, polygf::rat(num(rng), den(rng)));
  return s;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel kernels run serially\n");
#endif

  {
    const auto a = dense_random(48, 48, 1);
    const auto b = dense_random(48, 48, 2);
    polygf::BiSeries rs(0, 0), rp(0, 0);
    const double ts = time_once([&] { rs = polygf::mul_serial(a, b); });
    const double tp = time_once([&] { rp = polygf::mul_parallel(a, b); });
    report("biseries mul (48,48 dense)", ts, tp);
    if (!(rs == rp)) std::printf("  MISMATCH\n");
  }

  {
    const auto kind = polygf::SystemKind::with_rings(1);
    std::map<unsigned, polygf::BigInt> rs, rp;
    const double ts =
        time_once([&] { rs = polygf::labeled_connected_census_serial(kind, 8); });
    const double tp =
        time_once([&] { rp = polygf::labeled_connected_census(kind, 8); });
    report("labeled census (rings, n=8)", ts, tp);
    if (!(rs == rp)) std::printf("  MISMATCH\n");
  }

  {
    std::map<polygf::CycleType, polygf::BigInt> rs, rp;
    const double ts = time_once([&] { rs = polygf::cycle_census_serial(8); });
    const double tp = time_once([&] { rp = polygf::cycle_census_parallel(8); });
    report("cycle census (n=8)", ts, tp);
    if (!(rs == rp)) std::printf("  MISMATCH\n");
  }

  {
    const auto kind = polygf::SystemKind::with_rings(1);
    polygf::CanonicalTable rs, rp;
    const double ts =
        time_once([&] { rs = polygf::faa_di_bruno_Y_serial(kind, 10); });
    const double tp = time_once([&] { rp = polygf::faa_di_bruno_Y(kind, 10); });
    report("Faa di Bruno Y_10 (rings)", ts, tp);
    if (!(rs.coeffs == rp.coeffs)) std::printf("  MISMATCH\n");
  }

  return 0;
}
