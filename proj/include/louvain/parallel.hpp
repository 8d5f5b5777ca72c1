#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace louvain {

/// Number of workers an unconfigured parallel region would use.
inline int default_worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int current_worker_index() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

/// Resolves a requested worker count; 0 means "use the runtime default".
inline int resolve_workers(int requested) { return requested > 0 ? requested : default_worker_count(); }

/// Runs body(i) for i in [0, count) on `workers` threads, dynamically scheduled.
/// Bodies must only write state owned by index i.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
#ifdef _OPENMP
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 256) num_threads(workers)
  for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
#else
  (void)workers;
  for (std::size_t i = 0; i < count; ++i) body(i);
#endif
}

}  // namespace louvain
