// Timing harness for the two parallel kernels (partition scan, search
// restarts) against their serial forms. BF_THREADS=1 forces the serial
// path, so both run inside one process and the results can be compared
// bit for bit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "dmbst/approx.hpp"
#include "dmbst/geometry.hpp"
#include "dmbst/parallel.hpp"
#include "dmbst/rng.hpp"
#include "dmbst/starsearch.hpp"

using namespace dmbst;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// A 13-point star: the center at the origin plus the twelve icosahedron
/// vertices on the unit sphere, spun by a seeded rotation. The children
/// sit at pairwise chord distance about 1.05 while every center edge has
/// length 1, so the MST is exactly the star and one rewiring scan
/// dominates the runtime.
PointSet star_instance(std::uint64_t seed) {
  Rng rng(seed);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(1.0 + phi * phi);
  std::vector<Point3> pts{{0.0, 0.0, 0.0}};
  for (int a : {-1, 1})
    for (int b : {-1, 1}) {
      pts.push_back({0.0, a * s, b * s * phi});
      pts.push_back({a * s, b * s * phi, 0.0});
      pts.push_back({a * s * phi, 0.0, b * s});
    }
  const double yaw = rng.uniform(0.0, 6.283185307179586);
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  const double pitch = rng.uniform(0.0, 6.283185307179586);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point3& p = pts[i];
    p = {cy * p.x - sy * p.y, sy * p.x + cy * p.y, p.z};
    p = {cp * p.x - sp * p.z, p.y, sp * p.x + cp * p.z};
  }
  return PointSet(std::move(pts), Metric::euclidean);
}

struct KernelResult {
  double value = 0.0;
  double ms = 0.0;
};

template <typename F>
KernelResult timed(F&& f) {
  const Clock::time_point t0 = Clock::now();
  const double v = f();
  return {v, ms_since(t0)};
}

void report(const char* kernel, const KernelResult& serial,
            const KernelResult& parallel) {
  std::printf("%-24s %10.1f %12.1f %8.2fx   %s\n", kernel, serial.ms,
              parallel.ms, serial.ms / parallel.ms,
              serial.value == parallel.value ? "yes" : "NO");
}

}  // namespace

int main() {
  const int threads = std::max(4, worker_count());
  std::printf("parallel workers: %d\n", threads);
  std::printf("%-24s %10s %12s %9s   %s\n", "kernel", "serial_ms",
              "parallel_ms", "speedup", "identical");

  // Partition scan: delta 9 with k 7 on a 12-child star enumerates
  // S(12,7) = 627396 partitions per rewiring pass.
  const PointSet star = star_instance(7);
  const int reps = 20;
  auto pkry_total = [&] {
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) acc += pkry(star, 9, 7).bottleneck_value;
    return acc;
  };
  setenv("BF_THREADS", "1", 1);
  const KernelResult scan_serial = timed(pkry_total);
  setenv("BF_THREADS", std::to_string(threads).c_str(), 1);
  const KernelResult scan_parallel = timed(pkry_total);
  report("pkry partition scan", scan_serial, scan_parallel);

  // Search restarts: a short but real multistart run.
  const SearchBudget budget{32, 1500};
  auto search_best = [&] {
    return search(Metric::euclidean, 6, StarObjective::nkry(), budget, 1)
        .best_value;
  };
  setenv("BF_THREADS", "1", 1);
  const KernelResult search_serial = timed(search_best);
  setenv("BF_THREADS", std::to_string(threads).c_str(), 1);
  const KernelResult search_parallel = timed(search_best);
  report("search restarts", search_serial, search_parallel);

  const bool ok = scan_serial.value == scan_parallel.value &&
                  search_serial.value == search_parallel.value;
  return ok ? 0 : 1;
}
