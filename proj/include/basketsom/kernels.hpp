#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

// Hot inner loops, each in two variants: a plain serial reference and an
// OpenMP version. The OpenMP variants are bit-identical to the serial ones
// for any thread count: per-element work is independent (same FP expression
// per element) and reductions either compare (BMU min) or accumulate in a
// fixed serial order (quantization error). The unsuffixed entry points
// dispatch to OpenMP for large scans and are what the rest of the library
// calls; the _serial functions stay as the ground truth for tests and the
// benchmark.
namespace basketsom::kernels {

struct BmuHit {
    std::size_t cell = 0;  // row-major cell index
    double dist2 = 0.0;    // squared Euclidean distance
};

// Gaussian lattice kernel, shared by the step kernels and the public
// neighborhood_weight so both evaluate the identical FP expression.
inline double lattice_gauss(double dist2, double radius) {
    return std::exp(-dist2 / (2.0 * radius * radius));
}

// Cell minimizing ||w - x||^2; ties go to the smallest row-major index.
BmuHit find_bmu_serial(std::span<const double> weights, std::size_t cells,
                       std::size_t dim, std::span<const double> x);
BmuHit find_bmu_openmp(std::span<const double> weights, std::size_t cells,
                       std::size_t dim, std::span<const double> x);
BmuHit find_bmu(std::span<const double> weights, std::size_t cells,
                std::size_t dim, std::span<const double> x);

// Mean over samples of the BMU distance ||x - w_bmu||. Samples are n
// row-major bit rows of length dim.
double qe_serial(std::span<const double> weights, std::size_t cells,
                 std::size_t dim, std::span<const std::uint8_t> samples,
                 std::size_t n);
double qe_openmp(std::span<const double> weights, std::size_t cells,
                 std::size_t dim, std::span<const std::uint8_t> samples,
                 std::size_t n);
double qe(std::span<const double> weights, std::size_t cells, std::size_t dim,
          std::span<const std::uint8_t> samples, std::size_t n);

// Per cell: mean Euclidean distance to the existing 4-neighbors.
void umatrix_serial(std::span<const double> weights, int rows, int cols,
                    std::size_t dim, std::span<double> out);
void umatrix_openmp(std::span<const double> weights, int rows, int cols,
                    std::size_t dim, std::span<double> out);
void umatrix(std::span<const double> weights, int rows, int cols,
             std::size_t dim, std::span<double> out);

// One training update against a fixed BMU: for every cell c with gain
// g = alpha * exp(-d(bmu,c)^2 / (2 r^2)),  w_c <- (1-g) w_c + g x.
// The convex form makes g=0 a bit-exact no-op and g=1 an exact assignment.
void step_serial(std::span<double> weights, int rows, int cols,
                 std::size_t dim, std::span<const double> x, double alpha,
                 double radius, std::size_t bmu_cell);
void step_openmp(std::span<double> weights, int rows, int cols,
                 std::size_t dim, std::span<const double> x, double alpha,
                 double radius, std::size_t bmu_cell);
void step(std::span<double> weights, int rows, int cols, std::size_t dim,
          std::span<const double> x, double alpha, double radius,
          std::size_t bmu_cell);

}  // namespace basketsom::kernels
