#include "basketsom/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <utility>

#include "basketsom/analysis.hpp"
#include "basketsom/errors.hpp"
#include "basketsom/manifest.hpp"
#include "basketsom/report.hpp"
#include "basketsom/synth.hpp"

namespace basketsom {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string format2(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

// Writes through a lambda into a fresh file; IoError on open failure.
template <typename WriteFn>
void write_file(const fs::path& path, bool binary, WriteFn&& fn) {
    std::ofstream out(path,
                      binary ? std::ios::binary : std::ios::openmode{});
    if (!out) throw IoError("cannot open for writing: " + path.string());
    fn(out);
    out.flush();
    if (!out) throw IoError("failed writing: " + path.string());
}

void add_format(RunManifest& manifest, const CsvFormatSpec& format) {
    manifest.add("delimiter", std::string(1, format.delimiter));
    manifest.add("date_separator", std::string(1, format.date_separator));
    const char* order = "dmy";
    if (format.date_order == DateOrder::month_day_year) order = "mdy";
    if (format.date_order == DateOrder::year_month_day) order = "ymd";
    manifest.add("date_order", std::string(order));
    manifest.add("thousands_separator",
                 std::string(1, format.thousands_separator));
}

void add_config(RunManifest& manifest, const SomConfig& config) {
    manifest.add("rows", static_cast<long>(config.rows));
    manifest.add("cols", static_cast<long>(config.cols));
    manifest.add("rate", config.learning_rate);
    manifest.add("iters", config.iterations);
    manifest.add("seed", config.seed);
    manifest.add("init", to_string(config.init_mode));
    manifest.add("schedule", to_string(config.rate_schedule));
    manifest.add("radius0", config.resolved_initial_radius());
    manifest.add("radius1", config.final_radius);
}

}  // namespace

int run_ingest(const IngestOptions& options, std::ostream& out,
               std::ostream& err) {
    try {
        std::ifstream in(options.input);
        if (!in) {
            err << "cannot open input: " << options.input << '\n';
            return kExitIo;
        }
        const ParseResult parsed = parse_transactions(in, options.format);
        for (const auto& bad : parsed.bad_rows)
            err << options.input << ":" << bad.line << ": " << bad.reason
                << '\n';
        if (!parsed.bad_rows.empty() && !options.skip_bad_rows) {
            err << parsed.bad_rows.size()
                << " invalid row(s); rerun with --skip-bad-rows to ingest "
                   "the valid ones\n";
            return kExitValidation;
        }
        if (parsed.rows.empty()) {
            err << "no valid transaction rows in " << options.input << '\n';
            return kExitValidation;
        }

        const ProductCatalog catalog = build_catalog(parsed.rows);
        const std::vector<Basket> baskets =
            group_baskets(parsed.rows, catalog);

        write_file(options.out_baskets, false, [&](std::ostream& sink) {
            write_basket_matrix(sink, baskets, catalog);
        });
        write_file(options.out_catalog, false, [&](std::ostream& sink) {
            write_catalog(sink, catalog);
        });

        RunManifest manifest;
        manifest.command = "ingest";
        manifest.add_input("input", options.input);
        add_format(manifest, options.format);
        manifest.add("skip_bad_rows",
                     std::string(options.skip_bad_rows ? "true" : "false"));
        manifest.add("out_baskets", options.out_baskets);
        manifest.add("out_catalog", options.out_catalog);
        write_file(options.out_baskets + ".manifest", false,
                   [&](std::ostream& sink) { manifest.write(sink); });

        out << baskets.size() << " baskets\n";
        std::map<std::pair<int, int>, std::size_t> by_month;
        for (const auto& basket : baskets)
            ++by_month[{basket.date.year, basket.date.month}];
        if (by_month.size() > 1) {
            for (const auto& [month, count] : by_month) {
                char label[16];
                std::snprintf(label, sizeof label, "%04d-%02d", month.first,
                              month.second);
                out << "  " << label << ": " << count << " baskets\n";
            }
        }
        return kExitOk;
    } catch (const IoError& e) {
        err << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitValidation;
    }
}

int run_train(const TrainOptions& options, std::ostream& out,
              std::ostream& err) {
    try {
        options.config.validate();

        std::ifstream in(options.baskets);
        if (!in) {
            err << "cannot open basket matrix: " << options.baskets << '\n';
            return kExitIo;
        }
        const BasketMatrix matrix = read_basket_matrix(in);
        if (matrix.baskets.empty()) {
            err << "basket matrix has no baskets\n";
            return kExitValidation;
        }

        const auto [grid, report] = train(matrix.baskets, options.config);

        write_file(options.out, false, [&](std::ostream& sink) {
            write_map_file(sink, grid, options.config);
        });

        RunManifest manifest;
        manifest.command = "train";
        manifest.add_input("baskets", options.baskets);
        add_config(manifest, options.config);
        manifest.add("out", options.out);
        write_file(options.out + ".manifest", false,
                   [&](std::ostream& sink) { manifest.write(sink); });

        out << "trained " << grid.rows << "x" << grid.cols << " map on "
            << matrix.baskets.size() << " baskets (dim "
            << matrix.catalog.size() << ")\n";
        out << "initial quantization error: " << format2(report.initial_qe)
            << '\n';
        out << "final quantization error:   " << format2(report.final_qe)
            << '\n';
        return kExitOk;
    } catch (const IoError& e) {
        err << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitValidation;
    }
}

int run_report(const ReportOptions& options, std::ostream& out,
               std::ostream& err) {
    try {
        if (!(options.percentile > 0.0) || !(options.percentile < 100.0)) {
            err << "percentile must be in (0, 100)\n";
            return kExitValidation;
        }
        if (!(options.theta > 0.0) || options.theta > 1.0) {
            err << "theta must be in (0, 1]\n";
            return kExitValidation;
        }
        if (options.scale < 1) {
            err << "scale must be >= 1\n";
            return kExitValidation;
        }

        std::ifstream map_in(options.map);
        if (!map_in) {
            err << "cannot open map file: " << options.map << '\n';
            return kExitIo;
        }
        const MapFile map = read_map_file(map_in);

        std::ifstream baskets_in(options.baskets);
        if (!baskets_in) {
            err << "cannot open basket matrix: " << options.baskets << '\n';
            return kExitIo;
        }
        const BasketMatrix matrix = read_basket_matrix(baskets_in);
        if (map.grid.dim != matrix.catalog.size()) {
            err << "map dimension " << map.grid.dim
                << " does not match catalog size " << matrix.catalog.size()
                << '\n';
            return kExitValidation;
        }

        const UMatrix umatrix = compute_umatrix(map.grid);
        const AssociationReport report =
            build_report(map.grid, umatrix, matrix.baskets, matrix.catalog,
                         {options.percentile, options.theta});

        const fs::path dir(options.out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            err << "cannot create output directory: " << options.out_dir
                << '\n';
            return kExitIo;
        }

        write_file(dir / "umatrix.pgm", true, [&](std::ostream& sink) {
            write_pgm(sink, render_umatrix(umatrix, options.scale));
        });
        write_file(dir / "gridmap.txt", false, [&](std::ostream& sink) {
            emit_grid_map(sink, map.grid.rows, map.grid.cols,
                          report.cell_labels, report.clusters);
        });
        write_file(dir / "clusters.csv", false, [&](std::ostream& sink) {
            write_clusters_csv(sink, report);
        });
        write_file(dir / "labels.csv", false, [&](std::ostream& sink) {
            write_labels_csv(sink, report);
        });
        write_file(dir / "stats.csv", false, [&](std::ostream& sink) {
            write_stats_csv(sink, report);
        });

        RunManifest manifest;
        manifest.command = "report";
        manifest.add_input("map", options.map);
        manifest.add_input("baskets", options.baskets);
        manifest.add("percentile", options.percentile);
        manifest.add("theta", options.theta);
        manifest.add("scale", static_cast<long>(options.scale));
        manifest.add("out_dir", options.out_dir);
        write_file(dir / "manifest.txt", false,
                   [&](std::ostream& sink) { manifest.write(sink); });

        std::size_t labeled = 0;
        for (const auto& [cell, names] : report.cell_labels)
            labeled += !names.empty();
        out << report.clusters.size() << " clusters, " << labeled
            << " labeled cells, " << report.support.size()
            << " associated products\n";
        return kExitOk;
    } catch (const IoError& e) {
        err << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitValidation;
    }
}

int run_synth(const SynthOptions& options, std::ostream& out,
              std::ostream& err) {
    try {
        if (options.groups < 1 ||
            static_cast<std::size_t>(options.groups) > options.products) {
            err << "groups must be in [1, products]\n";
            return kExitValidation;
        }
        SynthSpec spec;
        spec.n_baskets = options.baskets;
        spec.n_products = options.products;
        spec.p_bg = options.p_bg;
        spec.seed = options.seed;
        // Contiguous near-equal partition of the catalog into groups.
        const std::size_t k = static_cast<std::size_t>(options.groups);
        for (std::size_t g = 0; g < k; ++g) {
            ProductGroup group;
            group.p_in = options.p_in;
            const std::size_t begin = g * options.products / k;
            const std::size_t end = (g + 1) * options.products / k;
            for (std::size_t j = begin; j < end; ++j)
                group.products.push_back(j);
            spec.groups.push_back(std::move(group));
        }

        const std::vector<Basket> baskets = generate(spec);
        const ProductCatalog catalog = synth_catalog(options.products);

        write_file(options.out_baskets, false, [&](std::ostream& sink) {
            write_basket_matrix(sink, baskets, catalog);
        });
        write_file(options.out_catalog, false, [&](std::ostream& sink) {
            write_catalog(sink, catalog);
        });

        RunManifest manifest;
        manifest.command = "synth";
        manifest.add("baskets", static_cast<long>(options.baskets));
        manifest.add("products", static_cast<long>(options.products));
        manifest.add("groups", static_cast<long>(options.groups));
        manifest.add("p_in", options.p_in);
        manifest.add("p_bg", options.p_bg);
        manifest.add("seed", options.seed);
        manifest.add("out_baskets", options.out_baskets);
        manifest.add("out_catalog", options.out_catalog);
        write_file(options.out_baskets + ".manifest", false,
                   [&](std::ostream& sink) { manifest.write(sink); });

        out << baskets.size() << " baskets\n";
        return kExitOk;
    } catch (const IoError& e) {
        err << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace basketsom
