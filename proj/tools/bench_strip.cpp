// Benchmark of the strip advance: serial reference vs the OpenMP path.
// The per-interface Riemann solves are independent, so the parallel kernel
// must reproduce the serial result bit for bit.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "phasefront/diagnostics.hpp"
#include "phasefront/glimm.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace phasefront;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
}

bool identical(const Strip& a, const Strip& b) {
    if (a.fans.size() != b.fans.size()) return false;
    for (std::size_t i = 0; i < a.fans.size(); ++i) {
        const auto& fa = a.fans[i];
        const auto& fb = b.fans[i];
        if (fa.states.size() != fb.states.size()) return false;
        for (std::size_t j = 0; j < fa.states.size(); ++j)
            if (std::memcmp(&fa.states[j], &fb.states[j], sizeof(State)) != 0)
                return false;
        for (std::size_t j = 0; j < fa.waves.size(); ++j)
            if (fa.waves[j].speed != fb.waves[j].speed) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const double h = argc > 1 ? std::atof(argv[1]) : 2e-4;
    const int repeat = argc > 2 ? std::atoi(argv[2]) : 5;
#ifdef _OPENMP
    const int threads = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();
#else
    const int threads = 1;
    std::puts("built without OpenMP: parallel path runs serially");
#endif

    const MaterialLaw law(4.0, 1.0, 1.0, 2.0);
    const KineticFunction kf = KineticFunction::max_dissipation(law);
    PerturbSpec spec;
    spec.Vstar = 0.3;
    spec.amplitude = 0.04;
    spec.pieces = 4000;
    spec.support = 2.0;

    GlimmConfig cfg;
    cfg.h = h;
    cfg.t_end = 4.0 * h;  // a few strips; timing targets advance_strip
    cfg.xmin = -8.0;
    cfg.xmax = 8.0;
    const GlimmRun run =
        glimm_run(law, kf, perturbed_boundary(law, kf, spec), cfg);
    std::printf("cells per strip: %ld, threads: %d, repeats: %d\n", run.ncell,
                threads, repeat);

    Strip serial, parallel;
    double t_serial = 0.0, t_parallel = 0.0;
    for (int r = 0; r < repeat; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        serial = advance_strip(run, 0, 1);
        t_serial += seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        parallel = advance_strip(run, 0, threads);
        t_parallel += seconds_since(t0);
    }
    t_serial /= repeat;
    t_parallel /= repeat;

    const bool same = identical(serial, parallel);
    std::printf("serial reference: %.4f s/strip (%.2f Msolves/s)\n", t_serial,
                run.ncell / t_serial * 1e-6);
    std::printf("openmp kernel:    %.4f s/strip (%.2f Msolves/s)\n",
                t_parallel, run.ncell / t_parallel * 1e-6);
    std::printf("speedup: %.2fx, outputs bit-identical: %s\n",
                t_serial / t_parallel, same ? "yes" : "NO");
    std::printf("%s\n", same ? "PASS" : "FAIL");
    return same ? 0 : 1;
}
