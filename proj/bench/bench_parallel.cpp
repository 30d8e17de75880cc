// Serial reference vs OpenMP kernels: wall time and bitwise agreement.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <sstream>

#include <omp.h>

#include "kicked_top/classical.hpp"
#include "kicked_top/sweep.hpp"
#include "kicked_top/table.hpp"

using namespace kicked_top;

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string csv(const Table& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const int threads = omp_get_max_threads();
    std::printf("threads: %d\n", threads);
    bool ok = true;

    {
        const int samples = quick ? 64 : 1000, iters = quick ? 1000 : 10000;
        double serial = 0, parallel = 0;
        const double ts = seconds([&] { serial = lyapunov_serial(2 * std::numbers::pi, iters, samples, 7); });
        const double tp = seconds([&] { parallel = lyapunov(2 * std::numbers::pi, iters, samples, 7); });
        const bool same = std::memcmp(&serial, &parallel, sizeof(double)) == 0;
        ok = ok && same;
        std::printf("lyapunov %dx%d   serial %8.3fs  parallel %8.3fs  speedup %5.2f  identical %s\n", samples,
                    iters, ts, tp, ts / tp, same ? "yes" : "NO");
    }
    {
        SweepGrid g;
        g.task = SweepTask::EchoAvg;
        g.j2 = quick ? std::vector<int>{16, 32} : std::vector<int>{16, 32, 64};
        g.kappa_count = quick ? 8 : 24;
        g.delta = {0.01, 0.1};
        g.n_min = 0;
        g.n_max = 40;
        Table a, b;
        const double ts = seconds([&] { a = run_sweep_serial(g); });
        const double tp = seconds([&] { b = run_sweep(g, threads); });
        const bool same = csv(a) == csv(b);
        ok = ok && same;
        std::printf("echo sweep %zu rows serial %8.3fs  parallel %8.3fs  speedup %5.2f  identical %s\n",
                    a.rows.size(), ts, tp, ts / tp, same ? "yes" : "NO");
    }
    {
        SweepGrid g;
        g.task = SweepTask::Otoc;
        g.j2 = {3, 4, 8, 16};
        g.kappa_count = quick ? 10 : 50;
        g.n_max = 64;
        Table a, b;
        const double ts = seconds([&] { a = run_sweep_serial(g); });
        const double tp = seconds([&] { b = run_sweep(g, threads); });
        const bool same = csv(a) == csv(b);
        ok = ok && same;
        std::printf("otoc sweep %zu rows serial %8.3fs  parallel %8.3fs  speedup %5.2f  identical %s\n",
                    a.rows.size(), ts, tp, ts / tp, same ? "yes" : "NO");
    }
    return ok ? 0 : 1;
}
