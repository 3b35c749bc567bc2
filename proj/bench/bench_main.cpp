// Serial-reference vs OpenMP kernel timings. Results must agree bitwise; this
// binary also asserts that while measuring.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "semidyn/limitset.hpp"
#include "semidyn/torus.hpp"
#include "semidyn/walk.hpp"

using namespace semidyn;

namespace {

GeneratorSet flagship() {
    std::vector<Matrix> gens;
    gens.push_back(Matrix::from_int_rows({{2, 1}, {1, 1}}));
    gens.push_back(Matrix::from_int_rows({{3, 2}, {1, 1}}));
    return GeneratorSet(2, std::move(gens), {"a", "b"});
}

template <typename F>
double time_s(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
    std::printf("%-24s serial %8.3f s   omp %8.3f s   speedup %5.2fx   %s\n", name, serial_s,
                parallel_s, serial_s / parallel_s, equal ? "bitwise-equal" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int threads = 4;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    if (argc > 1) threads = std::atoi(argv[1]);
    std::printf("kernel benchmark, %d threads\n", threads);

    const GeneratorSet S = flagship();
    int mismatches = 0;

    {
        std::vector<std::optional<ProximalEntry>> a, b;
        const double ts = time_s([&] { a = serial::proximal_entries(S, 15, 1e-9); });
        const double tp = time_s([&] { b = proximal_entries(S, 15, 1e-9, threads); });
        bool eq = a.size() == b.size();
        for (size_t i = 0; eq && i < a.size(); ++i) {
            eq = a[i].has_value() == b[i].has_value();
            if (eq && a[i]) eq = a[i]->direction.rep == b[i]->direction.rep;
        }
        report("proximal directions", ts, tp, eq);
        mismatches += eq ? 0 : 1;
    }
    {
        WalkConfig cfg;
        cfg.weights = {0.5, 0.5};
        cfg.seed = 1;
        cfg.c = 2.0;
        const auto x = project({1.0, 0.1});
        const auto y = project({0.2, 1.0});
        std::vector<double> a, b;
        const double ts =
            time_s([&] { a = serial::contraction_profile(cfg, S, x, y, {200}, 200000); });
        const double tp =
            time_s([&] { b = contraction_profile(cfg, S, x, y, {200}, 200000, threads); });
        report("contraction trials", ts, tp, a == b);
        mismatches += (a == b) ? 0 : 1;
    }
    {
        const std::vector<double> x0 = {0.41421356237309515, 0.7320508075688772};
        FloatOrbit a, b;
        const double ts = time_s([&] { a = serial::orbit_float(S, x0, 22); });
        const double tp = time_s([&] { b = orbit_float(S, x0, 22, kDefaultWordBudget, 50, threads); });
        const bool eq = a.points == b.points && a.grid.hit == b.grid.hit;
        report("torus float orbit", ts, tp, eq);
        mismatches += eq ? 0 : 1;
    }
    return mismatches;
}
