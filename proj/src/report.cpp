#include "basketsom/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "basketsom/csv.hpp"
#include "basketsom/errors.hpp"

namespace basketsom {

GrayscaleImage render_umatrix(const UMatrix& umatrix, int scale) {
    if (scale < 1) throw Error("scale must be >= 1");
    GrayscaleImage image;
    image.width = umatrix.cols * scale;
    image.height = umatrix.rows * scale;
    image.pixels.assign(
        static_cast<std::size_t>(image.width) * image.height, 0);

    const auto [min_it, max_it] =
        std::minmax_element(umatrix.values.begin(), umatrix.values.end());
    const double lo = *min_it;
    const double hi = *max_it;
    if (hi == lo) return image;  // degenerate range stays black

    for (int r = 0; r < umatrix.rows; ++r) {
        for (int c = 0; c < umatrix.cols; ++c) {
            const double scaled = 255.0 * (umatrix.at(r, c) - lo) / (hi - lo);
            const auto pixel =
                static_cast<std::uint8_t>(std::floor(scaled + 0.5));
            for (int dy = 0; dy < scale; ++dy) {
                const std::size_t base =
                    (static_cast<std::size_t>(r) * scale + dy) * image.width +
                    static_cast<std::size_t>(c) * scale;
                std::fill_n(image.pixels.begin() + base, scale, pixel);
            }
        }
    }
    return image;
}

void write_pgm(std::ostream& sink, const GrayscaleImage& image) {
    sink << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    sink.write(reinterpret_cast<const char*>(image.pixels.data()),
               static_cast<std::streamsize>(image.pixels.size()));
    if (!sink) throw IoError("failed writing PGM image");
}

void emit_grid_map(std::ostream& sink, int rows, int cols,
                   const std::map<CellIndex, std::vector<std::string>>& labels,
                   const std::vector<Cluster>& clusters) {
    std::map<CellIndex, int> cluster_of;
    for (const auto& cluster : clusters)
        for (const CellIndex& cell : cluster.cells)
            cluster_of[cell] = cluster.id;

    // Product ids assigned in lexicographic name order.
    std::set<std::string> names;
    for (const auto& [cell, list] : labels) names.insert(list.begin(),
                                                         list.end());
    std::map<std::string, int> id_of;
    int next_id = 1;
    for (const auto& name : names) id_of[name] = next_id++;

    std::vector<std::string> cell_text(
        static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    std::size_t width = 1;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            std::string text;
            const auto cluster = cluster_of.find({r, c});
            text = cluster == cluster_of.end()
                       ? "."
                       : std::to_string(cluster->second);
            const auto label = labels.find({r, c});
            if (label != labels.end() && !label->second.empty()) {
                text += ":[";
                for (std::size_t i = 0; i < label->second.size(); ++i) {
                    if (i > 0) text += ',';
                    text += std::to_string(id_of.at(label->second[i]));
                }
                text += ']';
            }
            width = std::max(width, text.size());
            cell_text[static_cast<std::size_t>(r) * cols + c] =
                std::move(text);
        }
    }

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            std::string& text = cell_text[static_cast<std::size_t>(r) * cols + c];
            text.resize(width, ' ');
            sink << text;
            sink << (c + 1 < cols ? " " : "");
        }
        sink << '\n';
    }
    sink << "legend:\n";
    for (const auto& [name, id] : id_of) sink << id << ' ' << name << '\n';
    if (!sink) throw IoError("failed writing grid map");
}

namespace {

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += '|';
        out += items[i];
    }
    return out;
}

std::string format4(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return buf;
}

}  // namespace

void write_clusters_csv(std::ostream& sink, const AssociationReport& report) {
    sink << "cluster_id,cells,dominant_products\n";
    for (const auto& cluster : report.clusters) {
        std::string cells;
        for (std::size_t i = 0; i < cluster.cells.size(); ++i) {
            if (i > 0) cells += ' ';
            cells += std::to_string(cluster.cells[i].row) + ':' +
                     std::to_string(cluster.cells[i].col);
        }
        const std::vector<std::string> fields = {
            std::to_string(cluster.id), cells,
            join_list(cluster.dominant_products)};
        sink << csv::join_fields(fields, ',') << '\n';
    }
    if (!sink) throw IoError("failed writing clusters.csv");
}

void write_labels_csv(std::ostream& sink, const AssociationReport& report) {
    sink << "row,col,products\n";
    for (const auto& [cell, names] : report.cell_labels) {
        if (names.empty()) continue;
        const std::vector<std::string> fields = {std::to_string(cell.row),
                                                 std::to_string(cell.col),
                                                 join_list(names)};
        sink << csv::join_fields(fields, ',') << '\n';
    }
    if (!sink) throw IoError("failed writing labels.csv");
}

void write_stats_csv(std::ostream& sink, const AssociationReport& report) {
    sink << "kind,product_a,product_b,value\n";
    for (const auto& [name, value] : report.support) {
        const std::vector<std::string> fields = {"support", name, "",
                                                 format4(value)};
        sink << csv::join_fields(fields, ',') << '\n';
    }
    for (const auto& [pair, value] : report.confidence) {
        const std::vector<std::string> fields = {"confidence", pair.first,
                                                 pair.second, format4(value)};
        sink << csv::join_fields(fields, ',') << '\n';
    }
    if (!sink) throw IoError("failed writing stats.csv");
}

}  // namespace basketsom
