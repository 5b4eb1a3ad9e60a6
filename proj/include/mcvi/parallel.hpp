#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcvi {

/// Worker count for an OpenMP region: `requested` when positive, otherwise
/// the OpenMP default. Always 1 when built without OpenMP.
inline int resolve_threads(int requested) noexcept {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

inline bool openmp_enabled() noexcept {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace mcvi
