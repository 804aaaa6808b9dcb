// Times the serial reference kernels against their OpenMP counterparts on
// synthetic data and cross-checks that both produce identical results.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "basketsom/kernels.hpp"
#include "basketsom/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using basketsom::SeededRng;
namespace kernels = basketsom::kernels;

double time_best_ms(int reps, auto&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const auto stop = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        if (ms < best) best = ms;
    }
    return best;
}

void print_row(const char* name, double serial_ms, double openmp_ms,
               bool identical) {
    std::printf("%-22s %10.2f %10.2f %8.2fx   %s\n", name, serial_ms,
                openmp_ms, serial_ms / openmp_ms,
                identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    int rows = 40;
    int cols = 40;
    std::size_t dim = 256;
    std::size_t n = 20000;
    long steps = 200;
    int reps = 3;
    std::uint64_t seed = 1;

    CLI::App app{"serial vs OpenMP kernel benchmark"};
    app.add_option("--rows", rows)->capture_default_str();
    app.add_option("--cols", cols)->capture_default_str();
    app.add_option("--dim", dim)->capture_default_str();
    app.add_option("--baskets", n)->capture_default_str();
    app.add_option("--steps", steps, "training steps to time")
        ->capture_default_str();
    app.add_option("--reps", reps, "repetitions, best time wins")
        ->capture_default_str();
    app.add_option("--seed", seed)->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    const std::size_t cells =
        static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);

    SeededRng rng(seed);
    std::vector<double> weights(cells * dim);
    for (double& w : weights) w = rng.uniform_double();
    std::vector<std::uint8_t> samples(n * dim);
    for (auto& bit : samples) bit = static_cast<std::uint8_t>(rng.bit());
    std::vector<double> sample0(dim);
    for (std::size_t k = 0; k < dim; ++k)
        sample0[k] = static_cast<double>(samples[k]);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif
    std::printf("grid %dx%d, dim %zu, %zu baskets\n\n", rows, cols, dim, n);
    std::printf("%-22s %10s %10s %9s\n", "kernel", "serial ms", "openmp ms",
                "speedup");

    bool all_identical = true;

    {  // BMU scans, one query per basket
        std::vector<kernels::BmuHit> serial_hits(n), openmp_hits(n);
        std::vector<double> x(dim);
        auto scan = [&](auto&& bmu, std::vector<kernels::BmuHit>& hits) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint8_t* bits = samples.data() + i * dim;
                for (std::size_t k = 0; k < dim; ++k)
                    x[k] = static_cast<double>(bits[k]);
                hits[i] = bmu(weights, cells, dim, x);
            }
        };
        const double serial_ms = time_best_ms(
            reps, [&] { scan(kernels::find_bmu_serial, serial_hits); });
        const double openmp_ms = time_best_ms(
            reps, [&] { scan(kernels::find_bmu_openmp, openmp_hits); });
        bool identical = true;
        for (std::size_t i = 0; i < n; ++i)
            identical &= serial_hits[i].cell == openmp_hits[i].cell &&
                         serial_hits[i].dist2 == openmp_hits[i].dist2;
        all_identical &= identical;
        print_row("find_bmu", serial_ms, openmp_ms, identical);
    }

    {  // quantization error over the whole sample set
        double serial_qe = 0.0, openmp_qe = 0.0;
        const double serial_ms = time_best_ms(reps, [&] {
            serial_qe = kernels::qe_serial(weights, cells, dim, samples, n);
        });
        const double openmp_ms = time_best_ms(reps, [&] {
            openmp_qe = kernels::qe_openmp(weights, cells, dim, samples, n);
        });
        const bool identical = serial_qe == openmp_qe;
        all_identical &= identical;
        print_row("quantization_error", serial_ms, openmp_ms, identical);
    }

    {  // U-matrix over the full grid
        std::vector<double> serial_u(cells), openmp_u(cells);
        const double serial_ms = time_best_ms(reps, [&] {
            kernels::umatrix_serial(weights, rows, cols, dim, serial_u);
        });
        const double openmp_ms = time_best_ms(reps, [&] {
            kernels::umatrix_openmp(weights, rows, cols, dim, openmp_u);
        });
        const bool identical =
            std::memcmp(serial_u.data(), openmp_u.data(),
                        cells * sizeof(double)) == 0;
        all_identical &= identical;
        print_row("compute_umatrix", serial_ms, openmp_ms, identical);
    }

    {  // training updates against a fixed BMU
        std::vector<double> serial_w = weights;
        std::vector<double> openmp_w = weights;
        const std::size_t bmu = cells / 2;
        const double serial_ms = time_best_ms(reps, [&] {
            for (long t = 0; t < steps; ++t)
                kernels::step_serial(serial_w, rows, cols, dim, sample0, 0.8,
                                     3.0, bmu);
        });
        const double openmp_ms = time_best_ms(reps, [&] {
            for (long t = 0; t < steps; ++t)
                kernels::step_openmp(openmp_w, rows, cols, dim, sample0, 0.8,
                                     3.0, bmu);
        });
        // Timed loops ran reps times on the same buffers; rerun once from
        // the pristine weights for the equality check.
        serial_w = weights;
        kernels::step_serial(serial_w, rows, cols, dim, sample0, 0.8, 3.0,
                             bmu);
        openmp_w = weights;
        kernels::step_openmp(openmp_w, rows, cols, dim, sample0, 0.8, 3.0,
                             bmu);
        const bool identical =
            std::memcmp(serial_w.data(), openmp_w.data(),
                        serial_w.size() * sizeof(double)) == 0;
        all_identical &= identical;
        print_row("train_step", serial_ms, openmp_ms, identical);
    }

    if (!all_identical) {
        std::printf("\nserial and OpenMP kernels disagree\n");
        return 1;
    }
    return 0;
}
