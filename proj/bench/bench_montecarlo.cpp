// Serial reference vs OpenMP estimate_sop on the default configuration.
//
// usage: bench_montecarlo [trials] [threads]

#include "rissop/montecarlo.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
    const std::uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200'000;
    const int threads = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
    const rissop::SystemConfig cfg;

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    const auto serial = rissop::estimate_sop_serial(cfg, trials, 7);
    auto t1 = clock::now();
    const auto parallel = rissop::estimate_sop(cfg, trials, 7, {threads, false});
    auto t2 = clock::now();

    const double ts = std::chrono::duration<double>(t1 - t0).count();
    const double tp = std::chrono::duration<double>(t2 - t1).count();
    std::printf("trials %llu  threads %d\n", static_cast<unsigned long long>(trials), threads);
    std::printf("serial   %8.3f s  %8.0f trials/s  outages %llu\n", ts, trials / ts,
                static_cast<unsigned long long>(serial.outages));
    std::printf("parallel %8.3f s  %8.0f trials/s  outages %llu  speedup %.2fx\n", tp,
                trials / tp, static_cast<unsigned long long>(parallel.outages), ts / tp);
    if (serial.outages != parallel.outages) {
        std::printf("MISMATCH between serial and parallel outage counts\n");
        return 1;
    }
    return 0;
}
