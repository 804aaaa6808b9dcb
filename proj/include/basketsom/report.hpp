#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "basketsom/analysis.hpp"

namespace basketsom {

struct GrayscaleImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major
};

// Each U-cell becomes a scale x scale block. Pixel = round-half-up of
// 255 * (v - min) / (max - min): nearest cells black, farthest white.
// A flat matrix (max == min) renders all black.
GrayscaleImage render_umatrix(const UMatrix& umatrix, int scale = 1);

// Binary portable graymap: "P5\n<w> <h>\n255\n" + raw pixel bytes.
void write_pgm(std::ostream& sink, const GrayscaleImage& image);

// Fixed-width text table, one line per grid row. Each cell shows its
// cluster id (or '.') and, when labeled, ":[ids]". A legend maps ids
// (assigned to labeled products in lexicographic order) back to names.
void emit_grid_map(std::ostream& sink, int rows, int cols,
                   const std::map<CellIndex, std::vector<std::string>>& labels,
                   const std::vector<Cluster>& clusters);

// clusters.csv: cluster_id, cells (space-separated row:col), dominant
// products ('|'-separated).
void write_clusters_csv(std::ostream& sink, const AssociationReport& report);

// labels.csv: row, col, products ('|'-separated), one line per labeled cell.
void write_labels_csv(std::ostream& sink, const AssociationReport& report);

// stats.csv: kind (support|confidence), product_a, product_b (blank for
// support), value with 4 decimal places.
void write_stats_csv(std::ostream& sink, const AssociationReport& report);

}  // namespace basketsom
