#include "tubeforge/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tubeforge {

#ifdef _OPENMP

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int n) { omp_set_num_threads(n < 1 ? 1 : n); }

bool openmp_enabled() { return true; }

#else

int worker_count() { return 1; }

void set_worker_count(int) {}

bool openmp_enabled() { return false; }

#endif

}  // namespace tubeforge
