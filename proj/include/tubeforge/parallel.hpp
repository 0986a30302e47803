#pragma once

namespace tubeforge {

// Number of threads the OpenMP kernels will use (1 when built without OpenMP).
int worker_count();

// Caps the OpenMP team size for all kernels. n < 1 is clamped to 1.
// Kernel output is bit-identical for every worker count.
void set_worker_count(int n);

bool openmp_enabled();

}  // namespace tubeforge
