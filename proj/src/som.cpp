#include "basketsom/som.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "basketsom/csv.hpp"
#include "basketsom/errors.hpp"
#include "basketsom/kernels.hpp"
#include "basketsom/rng.hpp"

namespace basketsom {

namespace {

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

SomGrid init_grid_with(SeededRng& rng, const SomConfig& config,
                       std::size_t dim) {
    SomGrid grid;
    grid.rows = config.rows;
    grid.cols = config.cols;
    grid.dim = dim;
    grid.weights.resize(grid.cell_count() * dim);
    if (config.init_mode == InitMode::random_binary) {
        for (double& w : grid.weights) w = static_cast<double>(rng.bit());
    } else {
        for (double& w : grid.weights) w = rng.uniform_double();
    }
    return grid;
}

// Packs basket bit vectors into one row-major matrix, checking that every
// basket shares the first basket's dimension.
std::vector<std::uint8_t> pack_bits(const std::vector<Basket>& baskets,
                                    std::size_t dim) {
    std::vector<std::uint8_t> packed;
    packed.reserve(baskets.size() * dim);
    for (const auto& basket : baskets) {
        if (basket.bits.size() != dim)
            throw DimensionMismatch(
                "basket " + std::to_string(basket.id) + " has dimension " +
                std::to_string(basket.bits.size()) + ", expected " +
                std::to_string(dim));
        packed.insert(packed.end(), basket.bits.begin(), basket.bits.end());
    }
    return packed;
}

double radius_at(long t, long iterations, double initial, double final_r) {
    if (iterations <= 1) return initial;
    const double frac =
        static_cast<double>(t) / static_cast<double>(iterations - 1);
    return initial + (final_r - initial) * frac;
}

double alpha_at(long t, const SomConfig& config) {
    if (config.rate_schedule == RateSchedule::constant)
        return config.learning_rate;
    return config.learning_rate *
           (1.0 - static_cast<double>(t) /
                      static_cast<double>(config.iterations));
}

}  // namespace

double SomConfig::resolved_initial_radius() const {
    return initial_radius.value_or(std::max(rows, cols) / 2.0);
}

void SomConfig::validate() const {
    if (rows < 1 || cols < 1 ||
        static_cast<long>(rows) * static_cast<long>(cols) < 2)
        throw Error("grid must have at least 2 cells (rows x cols >= 2)");
    if (iterations < 1) throw Error("iterations must be >= 1");
    if (!(learning_rate > 0.0) || learning_rate > 1.0)
        throw Error("learning rate must be in (0, 1]");
    const double r0 = resolved_initial_radius();
    if (!(r0 > 0.0)) throw Error("initial radius must be positive");
    if (!(final_radius > 0.0)) throw Error("final radius must be positive");
    if (final_radius > r0)
        throw Error("final radius must not exceed the initial radius");
}

SomGrid init_grid(const SomConfig& config, std::size_t dim) {
    config.validate();
    if (dim < 1) throw Error("grid dimension must be >= 1");
    SeededRng rng(config.seed);
    return init_grid_with(rng, config, dim);
}

double neighborhood_weight(CellIndex bmu, CellIndex cell, double radius) {
    if (!(radius > 0.0)) throw Error("radius must be positive");
    const double dr = cell.row - bmu.row;
    const double dc = cell.col - bmu.col;
    return kernels::lattice_gauss(dr * dr + dc * dc, radius);
}

BmuResult find_bmu(const SomGrid& grid, std::span<const double> x) {
    if (x.size() != grid.dim)
        throw DimensionMismatch("sample has dimension " +
                                std::to_string(x.size()) + ", grid expects " +
                                std::to_string(grid.dim));
    const auto hit =
        kernels::find_bmu(grid.weights, grid.cell_count(), grid.dim, x);
    return {grid.cell_at(hit.cell), std::sqrt(hit.dist2)};
}

void train_step(SomGrid& grid, std::span<const double> x, double alpha,
                double radius) {
    if (x.size() != grid.dim)
        throw DimensionMismatch("sample has dimension " +
                                std::to_string(x.size()) + ", grid expects " +
                                std::to_string(grid.dim));
    if (alpha < 0.0 || alpha > 1.0) throw Error("alpha must be in [0, 1]");
    if (!(radius > 0.0)) throw Error("radius must be positive");
    const auto bmu =
        kernels::find_bmu(grid.weights, grid.cell_count(), grid.dim, x);
    kernels::step(grid.weights, grid.rows, grid.cols, grid.dim, x, alpha,
                  radius, bmu.cell);
}

std::pair<SomGrid, TrainReport> train(const std::vector<Basket>& baskets,
                                      const SomConfig& config) {
    config.validate();
    if (baskets.empty()) throw EmptyInput("cannot train on zero baskets");
    const std::size_t dim = baskets.front().bits.size();
    if (dim < 1) throw Error("baskets have zero dimension");
    const auto packed = pack_bits(baskets, dim);

    SeededRng rng(config.seed);
    SomGrid grid = init_grid_with(rng, config, dim);
    const std::size_t cells = grid.cell_count();

    TrainReport report;
    report.seed = config.seed;
    report.initial_qe =
        kernels::qe(grid.weights, cells, dim, packed, baskets.size());

    const double r0 = config.resolved_initial_radius();
    std::vector<double> sample(dim);
    for (long t = 0; t < config.iterations; ++t) {
        const std::size_t pick =
            static_cast<std::size_t>(rng.uniform_index(baskets.size()));
        const std::uint8_t* bits = packed.data() + pick * dim;
        for (std::size_t k = 0; k < dim; ++k)
            sample[k] = static_cast<double>(bits[k]);

        const double alpha = alpha_at(t, config);
        const double radius =
            radius_at(t, config.iterations, r0, config.final_radius);
        const auto bmu = kernels::find_bmu(grid.weights, cells, dim, sample);
        kernels::step(grid.weights, grid.rows, grid.cols, dim, sample, alpha,
                      radius, bmu.cell);
    }

    report.final_qe =
        kernels::qe(grid.weights, cells, dim, packed, baskets.size());
    report.iterations_run = config.iterations;
    return {std::move(grid), report};
}

double quantization_error(const SomGrid& grid,
                          const std::vector<Basket>& baskets) {
    if (baskets.empty())
        throw EmptyInput("quantization error needs at least one basket");
    const auto packed = pack_bits(baskets, grid.dim);
    return kernels::qe(grid.weights, grid.cell_count(), grid.dim, packed,
                       baskets.size());
}

std::string to_string(InitMode mode) {
    return mode == InitMode::random_binary ? "random_binary"
                                           : "random_uniform";
}

std::string to_string(RateSchedule schedule) {
    return schedule == RateSchedule::constant ? "constant" : "linear_decay";
}

std::optional<InitMode> parse_init_mode(std::string_view text) {
    if (text == "random_binary") return InitMode::random_binary;
    if (text == "random_uniform") return InitMode::random_uniform;
    return std::nullopt;
}

std::optional<RateSchedule> parse_rate_schedule(std::string_view text) {
    if (text == "constant") return RateSchedule::constant;
    if (text == "linear_decay") return RateSchedule::linear_decay;
    return std::nullopt;
}

void write_map_file(std::ostream& sink, const SomGrid& grid,
                    const SomConfig& config) {
    sink << "basketsom-map 1\n";
    sink << "rows = " << grid.rows << '\n';
    sink << "cols = " << grid.cols << '\n';
    sink << "dim = " << grid.dim << '\n';
    sink << "seed = " << config.seed << '\n';
    sink << "learning_rate = " << format_double(config.learning_rate) << '\n';
    sink << "iterations = " << config.iterations << '\n';
    sink << "init_mode = " << to_string(config.init_mode) << '\n';
    sink << "rate_schedule = " << to_string(config.rate_schedule) << '\n';
    sink << "initial_radius = " << format_double(config.resolved_initial_radius())
         << '\n';
    sink << "final_radius = " << format_double(config.final_radius) << '\n';
    sink << "cells\n";
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            sink << r << ',' << c;
            for (const double w : grid.weight_at(r, c))
                sink << ',' << format_double(w);
            sink << '\n';
        }
    }
    if (!sink) throw IoError("failed writing map file");
}

MapFile read_map_file(std::istream& source) {
    std::string line;
    if (!std::getline(source, line) || line != "basketsom-map 1")
        throw Error("map file: missing 'basketsom-map 1' signature");

    MapFile result;
    SomConfig& config = result.config;
    long rows = 0, cols = 0, dim = 0;
    bool saw_cells = false;
    while (std::getline(source, line)) {
        if (line == "cells") {
            saw_cells = true;
            break;
        }
        const auto eq = line.find(" = ");
        if (eq == std::string::npos)
            throw Error("map file: bad header line '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 3);
        auto require_long = [&](long& out) {
            const auto parsed = parse_double(value);
            if (!parsed || *parsed != static_cast<long>(*parsed))
                throw Error("map file: bad integer for " + key);
            out = static_cast<long>(*parsed);
        };
        if (key == "rows") {
            require_long(rows);
            config.rows = static_cast<int>(rows);
        } else if (key == "cols") {
            require_long(cols);
            config.cols = static_cast<int>(cols);
        } else if (key == "dim") {
            require_long(dim);
        } else if (key == "seed") {
            std::uint64_t seed = 0;
            const char* last = value.data() + value.size();
            const auto [ptr, ec] = std::from_chars(value.data(), last, seed);
            if (ec != std::errc{} || ptr != last)
                throw Error("map file: bad seed");
            config.seed = seed;
        } else if (key == "learning_rate") {
            const auto parsed = parse_double(value);
            if (!parsed) throw Error("map file: bad learning_rate");
            config.learning_rate = *parsed;
        } else if (key == "iterations") {
            require_long(config.iterations);
        } else if (key == "init_mode") {
            const auto mode = parse_init_mode(value);
            if (!mode) throw Error("map file: bad init_mode '" + value + "'");
            config.init_mode = *mode;
        } else if (key == "rate_schedule") {
            const auto schedule = parse_rate_schedule(value);
            if (!schedule)
                throw Error("map file: bad rate_schedule '" + value + "'");
            config.rate_schedule = *schedule;
        } else if (key == "initial_radius") {
            const auto parsed = parse_double(value);
            if (!parsed) throw Error("map file: bad initial_radius");
            config.initial_radius = *parsed;
        } else if (key == "final_radius") {
            const auto parsed = parse_double(value);
            if (!parsed) throw Error("map file: bad final_radius");
            config.final_radius = *parsed;
        } else {
            throw Error("map file: unknown header key '" + key + "'");
        }
    }
    if (!saw_cells) throw Error("map file: missing 'cells' section");
    if (rows < 1 || cols < 1 || dim < 1)
        throw Error("map file: rows, cols and dim must be declared positive");

    SomGrid& grid = result.grid;
    grid.rows = static_cast<int>(rows);
    grid.cols = static_cast<int>(cols);
    grid.dim = static_cast<std::size_t>(dim);
    grid.weights.assign(grid.cell_count() * grid.dim, 0.0);
    std::vector<bool> seen(grid.cell_count(), false);

    std::size_t filled = 0;
    while (std::getline(source, line)) {
        if (line.empty()) continue;
        const auto fields = csv::split_fields(line, ',');
        if (fields.size() != grid.dim + 2)
            throw Error("map file: cell line has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(grid.dim + 2));
        const auto r = parse_double(fields[0]);
        const auto c = parse_double(fields[1]);
        if (!r || !c || *r < 0 || *r >= rows || *c < 0 || *c >= cols)
            throw Error("map file: cell index out of range in '" + line + "'");
        const std::size_t cell = static_cast<std::size_t>(*r) * cols +
                                 static_cast<std::size_t>(*c);
        if (seen[cell])
            throw Error("map file: duplicate cell " + fields[0] + "," +
                        fields[1]);
        seen[cell] = true;
        double* w = grid.weights.data() + cell * grid.dim;
        for (std::size_t k = 0; k < grid.dim; ++k) {
            const auto value = parse_double(fields[k + 2]);
            if (!value)
                throw Error("map file: bad weight '" + fields[k + 2] + "'");
            w[k] = *value;
        }
        ++filled;
    }
    if (filled != grid.cell_count())
        throw Error("map file: has " + std::to_string(filled) +
                    " cells, expected " + std::to_string(grid.cell_count()));
    return result;
}

}  // namespace basketsom
