#include "basketsom/kernels.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace basketsom::kernels {

namespace {

// Below this many inner multiply-adds the fork/join overhead wins.
constexpr std::size_t kParallelGrain = 1u << 15;

template <typename T>
double dist2_to(const double* w, const T* x, std::size_t dim) {
    double sum = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double d = w[k] - static_cast<double>(x[k]);
        sum += d * d;
    }
    return sum;
}

bool better(double dist2, std::size_t cell, const BmuHit& best) {
    return dist2 < best.dist2 || (dist2 == best.dist2 && cell < best.cell);
}

// Neighbor scan order is fixed (up, down, left, right) so the serial and
// OpenMP variants accumulate in the same order.
double mean_neighbor_distance(std::span<const double> weights, int rows,
                              int cols, std::size_t dim, int row, int col) {
    static constexpr int kOffsets[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    const double* self =
        weights.data() + (static_cast<std::size_t>(row) * cols + col) * dim;
    double sum = 0.0;
    int count = 0;
    for (const auto& offset : kOffsets) {
        const int r = row + offset[0];
        const int c = col + offset[1];
        if (r < 0 || r >= rows || c < 0 || c >= cols) continue;
        const double* other =
            weights.data() + (static_cast<std::size_t>(r) * cols + c) * dim;
        sum += std::sqrt(dist2_to(other, self, dim));
        ++count;
    }
    return sum / count;
}

void step_cell(std::span<double> weights, int cols, std::size_t dim,
               std::span<const double> x, double alpha, double radius,
               std::size_t bmu_cell, std::size_t cell) {
    const int bmu_row = static_cast<int>(bmu_cell / cols);
    const int bmu_col = static_cast<int>(bmu_cell % cols);
    const int row = static_cast<int>(cell / cols);
    const int col = static_cast<int>(cell % cols);
    const double dr = row - bmu_row;
    const double dc = col - bmu_col;
    const double gain = alpha * lattice_gauss(dr * dr + dc * dc, radius);
    if (gain == 0.0) return;  // keeps alpha = 0 a bit-exact no-op
    double* w = weights.data() + cell * dim;
    const double keep = 1.0 - gain;
    for (std::size_t k = 0; k < dim; ++k) w[k] = keep * w[k] + gain * x[k];
}

}  // namespace

BmuHit find_bmu_serial(std::span<const double> weights, std::size_t cells,
                       std::size_t dim, std::span<const double> x) {
    BmuHit best{0, dist2_to(weights.data(), x.data(), dim)};
    for (std::size_t c = 1; c < cells; ++c) {
        const double d2 = dist2_to(weights.data() + c * dim, x.data(), dim);
        if (better(d2, c, best)) best = {c, d2};
    }
    return best;
}

BmuHit find_bmu_openmp(std::span<const double> weights, std::size_t cells,
                       std::size_t dim, std::span<const double> x) {
#ifdef _OPENMP
    // Thread-local minima merged by comparison only, so the merge order
    // cannot change the result.
    BmuHit best{cells, std::numeric_limits<double>::infinity()};
    #pragma omp parallel
    {
        BmuHit local{cells, std::numeric_limits<double>::infinity()};
        #pragma omp for nowait
        for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(cells);
             ++c) {
            const double d2 =
                dist2_to(weights.data() + c * dim, x.data(), dim);
            if (better(d2, static_cast<std::size_t>(c), local))
                local = {static_cast<std::size_t>(c), d2};
        }
        #pragma omp critical
        {
            if (local.cell < cells && better(local.dist2, local.cell, best))
                best = local;
        }
    }
    return best;
#else
    return find_bmu_serial(weights, cells, dim, x);
#endif
}

BmuHit find_bmu(std::span<const double> weights, std::size_t cells,
                std::size_t dim, std::span<const double> x) {
#ifdef _OPENMP
    if (cells * dim >= kParallelGrain)
        return find_bmu_openmp(weights, cells, dim, x);
#endif
    return find_bmu_serial(weights, cells, dim, x);
}

double qe_serial(std::span<const double> weights, std::size_t cells,
                 std::size_t dim, std::span<const std::uint8_t> samples,
                 std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t* x = samples.data() + i * dim;
        double best = dist2_to(weights.data(), x, dim);
        for (std::size_t c = 1; c < cells; ++c) {
            const double d2 = dist2_to(weights.data() + c * dim, x, dim);
            if (d2 < best) best = d2;
        }
        sum += std::sqrt(best);
    }
    return sum / static_cast<double>(n);
}

double qe_openmp(std::span<const double> weights, std::size_t cells,
                 std::size_t dim, std::span<const std::uint8_t> samples,
                 std::size_t n) {
#ifdef _OPENMP
    // Per-sample distances are independent; the final sum runs serially in
    // index order so the result matches qe_serial bit for bit.
    std::vector<double> dists(n);
    #pragma omp parallel for
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const std::uint8_t* x = samples.data() + i * dim;
        double best = dist2_to(weights.data(), x, dim);
        for (std::size_t c = 1; c < cells; ++c) {
            const double d2 = dist2_to(weights.data() + c * dim, x, dim);
            if (d2 < best) best = d2;
        }
        dists[i] = std::sqrt(best);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += dists[i];
    return sum / static_cast<double>(n);
#else
    return qe_serial(weights, cells, dim, samples, n);
#endif
}

double qe(std::span<const double> weights, std::size_t cells, std::size_t dim,
          std::span<const std::uint8_t> samples, std::size_t n) {
#ifdef _OPENMP
    if (n * cells * dim >= kParallelGrain)
        return qe_openmp(weights, cells, dim, samples, n);
#endif
    return qe_serial(weights, cells, dim, samples, n);
}

void umatrix_serial(std::span<const double> weights, int rows, int cols,
                    std::size_t dim, std::span<double> out) {
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out[static_cast<std::size_t>(r) * cols + c] =
                mean_neighbor_distance(weights, rows, cols, dim, r, c);
}

void umatrix_openmp(std::span<const double> weights, int rows, int cols,
                    std::size_t dim, std::span<double> out) {
#ifdef _OPENMP
    const std::ptrdiff_t cells =
        static_cast<std::ptrdiff_t>(rows) * static_cast<std::ptrdiff_t>(cols);
    #pragma omp parallel for
    for (std::ptrdiff_t cell = 0; cell < cells; ++cell) {
        const int r = static_cast<int>(cell / cols);
        const int c = static_cast<int>(cell % cols);
        out[cell] = mean_neighbor_distance(weights, rows, cols, dim, r, c);
    }
#else
    umatrix_serial(weights, rows, cols, dim, out);
#endif
}

void umatrix(std::span<const double> weights, int rows, int cols,
             std::size_t dim, std::span<double> out) {
#ifdef _OPENMP
    if (static_cast<std::size_t>(rows) * cols * dim >= kParallelGrain) {
        umatrix_openmp(weights, rows, cols, dim, out);
        return;
    }
#endif
    umatrix_serial(weights, rows, cols, dim, out);
}

void step_serial(std::span<double> weights, int rows, int cols,
                 std::size_t dim, std::span<const double> x, double alpha,
                 double radius, std::size_t bmu_cell) {
    const std::size_t cells =
        static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    for (std::size_t cell = 0; cell < cells; ++cell)
        step_cell(weights, cols, dim, x, alpha, radius, bmu_cell, cell);
}

void step_openmp(std::span<double> weights, int rows, int cols,
                 std::size_t dim, std::span<const double> x, double alpha,
                 double radius, std::size_t bmu_cell) {
#ifdef _OPENMP
    const std::ptrdiff_t cells =
        static_cast<std::ptrdiff_t>(rows) * static_cast<std::ptrdiff_t>(cols);
    #pragma omp parallel for
    for (std::ptrdiff_t cell = 0; cell < cells; ++cell)
        step_cell(weights, cols, dim, x, alpha, radius, bmu_cell,
                  static_cast<std::size_t>(cell));
#else
    step_serial(weights, rows, cols, dim, x, alpha, radius, bmu_cell);
#endif
}

void step(std::span<double> weights, int rows, int cols, std::size_t dim,
          std::span<const double> x, double alpha, double radius,
          std::size_t bmu_cell) {
#ifdef _OPENMP
    if (static_cast<std::size_t>(rows) * cols * dim >= kParallelGrain) {
        step_openmp(weights, rows, cols, dim, x, alpha, radius, bmu_cell);
        return;
    }
#endif
    step_serial(weights, rows, cols, dim, x, alpha, radius, bmu_cell);
}

}  // namespace basketsom::kernels
