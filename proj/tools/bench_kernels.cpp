// Benchmark of the brute-force enumeration kernel: serial reference vs the
// OpenMP-parallel policy.  Both must report the same lattice count; timings
// go to stdout.

#include <chrono>
#include <cstdio>

#include "gl4/enumerate.hpp"
#include "gl4/vertex_graph.hpp"

#ifdef GL4_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

template <typename Fn>
double timed(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main() {
#ifdef GL4_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel policy falls back to serial\n");
#endif

    gl4::RingCtxPtr ctx = gl4::RingContext::make(3, 12, 2);
    gl4::Isocrystal iso = gl4::Isocrystal::make(ctx);

    std::size_t n_serial = 0, n_parallel = 0;
    double t_serial = timed(
        [&] { n_serial = gl4::enumerate_band_dieudonne(iso).size(); });
    double t_parallel = timed([&] {
        n_parallel =
            gl4::enumerate_band_dieudonne(iso, gl4::Exec::parallel).size();
    });
    std::printf("band enumeration  serial   %6zu lattices in %7.2f s\n",
                n_serial, t_serial);
    std::printf("band enumeration  parallel %6zu lattices in %7.2f s (x%.2f)\n",
                n_parallel, t_parallel, t_serial / t_parallel);
    if (n_serial != n_parallel) {
        std::printf("MISMATCH: policies disagree\n");
        return 1;
    }

    gl4::QSpace Q = gl4::QSpace::make(3, 12);
    std::size_t g_serial = 0, g_parallel = 0;
    double tg_serial = timed([&] {
        g_serial = gl4::build_graph(Q, gl4::standard_vertex(Q), 2).nodes.size();
    });
    double tg_parallel = timed([&] {
        g_parallel = gl4::build_graph(Q, gl4::standard_vertex(Q), 2,
                                      gl4::Exec::parallel)
                         .nodes.size();
    });
    std::printf("graph ball r=2    serial   %6zu nodes    in %7.2f s\n",
                g_serial, tg_serial);
    std::printf("graph ball r=2    parallel %6zu nodes    in %7.2f s (x%.2f)\n",
                g_parallel, tg_parallel, tg_serial / tg_parallel);
    if (g_serial != g_parallel) {
        std::printf("MISMATCH: policies disagree\n");
        return 1;
    }
    return 0;
}
