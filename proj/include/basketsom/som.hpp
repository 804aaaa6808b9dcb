#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "basketsom/ingest.hpp"

namespace basketsom {

enum class InitMode { random_binary, random_uniform };
enum class RateSchedule { constant, linear_decay };

struct SomConfig {
    int rows = 10;
    int cols = 12;
    double learning_rate = 0.8;
    long iterations = 20000;
    std::uint64_t seed = 1;
    InitMode init_mode = InitMode::random_binary;
    RateSchedule rate_schedule = RateSchedule::constant;
    std::optional<double> initial_radius;  // default max(rows, cols) / 2
    double final_radius = 1.0;

    double resolved_initial_radius() const;

    // Throws Error unless rows*cols >= 2, iterations >= 1,
    // 0 < learning_rate <= 1, 0 < final_radius <= initial_radius.
    void validate() const;
};

struct CellIndex {
    int row = 0;
    int col = 0;

    auto operator<=>(const CellIndex&) const = default;
};

struct SomGrid {
    int rows = 0;
    int cols = 0;
    std::size_t dim = 0;
    std::vector<double> weights;  // cell-major: (row*cols + col)*dim

    std::size_t cell_count() const {
        return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    }
    std::span<double> weight_at(int row, int col) {
        return {weights.data() +
                    (static_cast<std::size_t>(row) * cols + col) * dim,
                dim};
    }
    std::span<const double> weight_at(int row, int col) const {
        return {weights.data() +
                    (static_cast<std::size_t>(row) * cols + col) * dim,
                dim};
    }
    CellIndex cell_at(std::size_t index) const {
        return {static_cast<int>(index / cols), static_cast<int>(index % cols)};
    }
};

struct BmuResult {
    CellIndex cell;
    double distance = 0.0;
};

struct TrainReport {
    double initial_qe = 0.0;
    double final_qe = 0.0;
    long iterations_run = 0;
    std::uint64_t seed = 0;
};

// Fills a rows x cols grid of dim-component weight vectors from the seeded
// generator (see rng.hpp for the exact draw definitions). Draw order: cells
// in row-major order, components 0..dim-1 within a cell, one draw per
// component. random_binary uses bit(), random_uniform uses uniform_double().
SomGrid init_grid(const SomConfig& config, std::size_t dim);

// Gaussian kernel over lattice distance: exp(-d^2 / (2 r^2)) with
// d = Euclidean distance between the two cells' (row, col) coordinates.
double neighborhood_weight(CellIndex bmu, CellIndex cell, double radius);

// Cell whose weight minimizes Euclidean distance to x, ties broken by the
// smallest row-major index. Throws DimensionMismatch.
BmuResult find_bmu(const SomGrid& grid, std::span<const double> x);

// One update in place: BMU against the pre-update weights, then every cell
// moves toward x by alpha * neighborhood_weight. Requires 0 <= alpha <= 1
// and radius > 0.
void train_step(SomGrid& grid, std::span<const double> x, double alpha,
                double radius);

// Full run: seeded init, then config.iterations steps. The sample at step t
// is drawn uniformly with replacement (the generator continues the stream
// used by init). alpha_t is learning_rate for the constant schedule and
// learning_rate * (1 - t/iterations) for linear_decay; the radius decays
// linearly from initial_radius at t=0 to final_radius at the last step.
std::pair<SomGrid, TrainReport> train(const std::vector<Basket>& baskets,
                                      const SomConfig& config);

// Mean over baskets of the distance to the best-matching cell.
double quantization_error(const SomGrid& grid,
                          const std::vector<Basket>& baskets);

// Trained-map file: `basketsom-map 1`, a key = value header echoing the
// config, a `cells` line, then one `row,col,w_0,...,w_{dim-1}` line per
// cell. Reals use the shortest decimal form that round-trips the double
// exactly, so write -> read -> write is byte-identical.
void write_map_file(std::ostream& sink, const SomGrid& grid,
                    const SomConfig& config);

struct MapFile {
    SomGrid grid;
    SomConfig config;
};

MapFile read_map_file(std::istream& source);

std::string to_string(InitMode mode);
std::string to_string(RateSchedule schedule);
std::optional<InitMode> parse_init_mode(std::string_view text);
std::optional<RateSchedule> parse_rate_schedule(std::string_view text);

}  // namespace basketsom
