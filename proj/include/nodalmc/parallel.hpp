#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nodalmc::parallel {

/// True when not already inside an active parallel region; kernels only fork
/// at the outermost level so replicate-level parallelism is not oversubscribed.
inline bool outermost() {
#ifdef _OPENMP
  return omp_in_parallel() == 0;
#else
  return true;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace nodalmc::parallel
