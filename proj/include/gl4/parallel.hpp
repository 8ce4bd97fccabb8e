// Execution policy for the brute-force enumeration kernels: a serial
// reference path and an OpenMP path that must produce identical output.

#pragma once

#include <cstddef>

namespace gl4 {

enum class Exec { serial, parallel };

template <typename F>
void parallel_for(Exec exec, std::ptrdiff_t n, F&& body) {
#ifdef GL4_HAVE_OPENMP
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
        return;
    }
#else
    (void)exec;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace gl4
