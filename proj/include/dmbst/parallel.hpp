#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmbst {

/// Worker count for parallel kernels: BF_THREADS env var when set (>= 1),
/// otherwise the OpenMP default; 1 in builds without OpenMP.
inline int worker_count() {
  if (const char* env = std::getenv("BF_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace dmbst
