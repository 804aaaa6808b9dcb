#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "basketsom/kernels.hpp"
#include "basketsom/rng.hpp"

using namespace basketsom;
namespace k = basketsom::kernels;

namespace {

struct Case {
    int rows;
    int cols;
    std::size_t dim;
    std::vector<double> weights;
    std::vector<std::uint8_t> samples;
    std::size_t n;
};

// Random shapes straddling the parallel-dispatch grain.
Case random_case(SeededRng& rng, bool large) {
    Case c;
    c.rows = static_cast<int>(2 + rng.uniform_index(large ? 30 : 4));
    c.cols = static_cast<int>(2 + rng.uniform_index(large ? 30 : 4));
    c.dim = 1 + rng.uniform_index(large ? 64 : 6);
    const std::size_t cells =
        static_cast<std::size_t>(c.rows) * static_cast<std::size_t>(c.cols);
    c.weights.resize(cells * c.dim);
    for (double& w : c.weights) w = rng.uniform_double();
    c.n = 1 + rng.uniform_index(large ? 200 : 20);
    c.samples.resize(c.n * c.dim);
    for (auto& bit : c.samples) bit = static_cast<std::uint8_t>(rng.bit());
    return c;
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    SeededRng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const bool large = trial % 2 == 0;
        Case c = random_case(rng, large);
        const std::size_t cells =
            static_cast<std::size_t>(c.rows) * static_cast<std::size_t>(c.cols);

        std::vector<double> x(c.dim);
        for (std::size_t j = 0; j < c.dim; ++j)
            x[j] = static_cast<double>(c.samples[j]);

        const auto serial_hit = k::find_bmu_serial(c.weights, cells, c.dim, x);
        const auto openmp_hit = k::find_bmu_openmp(c.weights, cells, c.dim, x);
        const auto dispatched = k::find_bmu(c.weights, cells, c.dim, x);
        CHECK(serial_hit.cell == openmp_hit.cell);
        CHECK(serial_hit.dist2 == openmp_hit.dist2);
        CHECK(serial_hit.cell == dispatched.cell);
        CHECK(serial_hit.dist2 == dispatched.dist2);

        CHECK(k::qe_serial(c.weights, cells, c.dim, c.samples, c.n) ==
              k::qe_openmp(c.weights, cells, c.dim, c.samples, c.n));
        CHECK(k::qe_serial(c.weights, cells, c.dim, c.samples, c.n) ==
              k::qe(c.weights, cells, c.dim, c.samples, c.n));

        std::vector<double> u_serial(cells), u_openmp(cells), u_dispatch(cells);
        k::umatrix_serial(c.weights, c.rows, c.cols, c.dim, u_serial);
        k::umatrix_openmp(c.weights, c.rows, c.cols, c.dim, u_openmp);
        k::umatrix(c.weights, c.rows, c.cols, c.dim, u_dispatch);
        CHECK(u_serial == u_openmp);
        CHECK(u_serial == u_dispatch);

        std::vector<double> w_serial = c.weights;
        std::vector<double> w_openmp = c.weights;
        std::vector<double> w_dispatch = c.weights;
        const std::size_t bmu = rng.uniform_index(cells);
        const double alpha = rng.uniform_double();
        const double radius = 0.5 + 3.0 * rng.uniform_double();
        k::step_serial(w_serial, c.rows, c.cols, c.dim, x, alpha, radius, bmu);
        k::step_openmp(w_openmp, c.rows, c.cols, c.dim, x, alpha, radius, bmu);
        k::step(w_dispatch, c.rows, c.cols, c.dim, x, alpha, radius, bmu);
        CHECK(w_serial == w_openmp);
        CHECK(w_serial == w_dispatch);
    }
}

TEST_CASE("BMU tie-breaking picks the lowest cell in both variants") {
    // All cells identical: every distance ties.
    const std::size_t cells = 257;  // not a multiple of typical chunk sizes
    const std::size_t dim = 3;
    std::vector<double> weights(cells * dim, 0.25);
    const std::vector<double> x = {0.9, 0.1, 0.4};
    const auto serial_hit = k::find_bmu_serial(weights, cells, dim, x);
    const auto openmp_hit = k::find_bmu_openmp(weights, cells, dim, x);
    CHECK(serial_hit.cell == 0);
    CHECK(openmp_hit.cell == 0);

    // Two minima off the ends.
    weights[17 * dim + 0] = 0.9;
    weights[17 * dim + 1] = 0.1;
    weights[17 * dim + 2] = 0.4;
    weights[200 * dim + 0] = 0.9;
    weights[200 * dim + 1] = 0.1;
    weights[200 * dim + 2] = 0.4;
    CHECK(k::find_bmu_serial(weights, cells, dim, x).cell == 17);
    CHECK(k::find_bmu_openmp(weights, cells, dim, x).cell == 17);
}

TEST_CASE("lattice_gauss endpoints") {
    CHECK(k::lattice_gauss(0.0, 3.0) == 1.0);
    CHECK(k::lattice_gauss(1.0, 1.0) < 1.0);
    CHECK(k::lattice_gauss(1.0, 1.0) > k::lattice_gauss(4.0, 1.0));
}
