// Times the OpenMP seed batch against the serial reference and checks that
// both give the same traces.
//   bench_batch [preset] [seeds] [repeats]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "blepc/batch.hpp"
#include "blepc/presets.hpp"
#include "blepc/report.hpp"

using namespace blepc;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string preset = argc > 1 ? argv[1] : "lab-ramp-hybrid";
    const int n = argc > 2 ? std::atoi(argv[2]) : 32;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;
    if (n < 1 || repeats < 1) {
        std::fprintf(stderr, "usage: bench_batch [preset] [seeds >= 1] [repeats >= 1]\n");
        return 2;
    }
    const auto spec = make_preset(preset);
    const auto seeds = seed_range(1, static_cast<std::uint64_t>(n));

    std::vector<SeedRun> par, ser;
    const double t_ser = best_of(repeats, [&] { ser = run_batch_serial(spec, seeds); });
    const double t_par = best_of(repeats, [&] { par = run_batch(spec, seeds); });

    bool same = par.size() == ser.size();
    for (std::size_t i = 0; same && i < par.size(); ++i)
        same = format_trace(par[i].trace) == format_trace(ser[i].trace);

    std::printf("preset %s, %d seeds, %d threads\n", preset.c_str(), n, omp_get_max_threads());
    std::printf("serial   %8.3f s\n", t_ser);
    std::printf("parallel %8.3f s  (x%.2f)\n", t_par, t_ser / t_par);
    std::printf("traces identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
