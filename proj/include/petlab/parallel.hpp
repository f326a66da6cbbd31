#pragma once

// Worker-count control for the parallel kernels. PETLAB_THREADS overrides the
// OpenMP default; builds without OpenMP run the same loops serially.

#ifdef PETLAB_HAVE_OPENMP
#include <omp.h>
#endif

#include <cstdlib>

namespace petlab {

inline int worker_count() {
#ifdef PETLAB_HAVE_OPENMP
    if (const char* env = std::getenv("PETLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace petlab
