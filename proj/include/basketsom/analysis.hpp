#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "basketsom/ingest.hpp"
#include "basketsom/som.hpp"

namespace basketsom {

struct UMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  // row-major, non-negative

    double at(int row, int col) const {
        return values[static_cast<std::size_t>(row) * cols + col];
    }
    double& at(int row, int col) {
        return values[static_cast<std::size_t>(row) * cols + col];
    }
};

// Mean Euclidean distance from each cell's weight to its existing
// 4-neighbors; border cells average over their 2 or 3 neighbors only.
UMatrix compute_umatrix(const SomGrid& grid);

/// 4-connected low-distance region of the U-matrix.
struct Cluster {
    int id = 0;
    std::vector<CellIndex> cells;  // row-major order
    std::vector<std::string> dominant_products;
};

// Percentile of the values with linear interpolation between order
// statistics (rank = p/100 * (n-1), the numpy default). p in (0, 100).
double percentile_linear(std::vector<double> values, double p);

// Cells with value <= the percentile threshold, grouped into 4-connected
// components, sorted by size descending (ties: smallest row-major cell
// first), ids from 1. dominant_products is left empty here.
std::vector<Cluster> extract_clusters(const UMatrix& umatrix,
                                      double threshold_percentile = 40.0);

// Products whose weight component is >= theta, per cell, sorted by
// descending component value then name. theta in (0, 1].
std::map<CellIndex, std::vector<std::string>> cell_associations(
    const SomGrid& grid, const ProductCatalog& catalog, double theta = 0.5);

// Fraction of baskets containing the product.
double support(const std::vector<Basket>& baskets,
               const ProductCatalog& catalog, const std::string& product);

// Of the baskets containing a, the fraction also containing b. Throws
// UndefinedConditional when no basket contains a.
double confidence(const std::vector<Basket>& baskets,
                  const ProductCatalog& catalog, const std::string& a,
                  const std::string& b);

struct ReportParams {
    double threshold_percentile = 40.0;
    double theta = 0.5;
};

struct AssociationReport {
    std::vector<Cluster> clusters;
    std::map<CellIndex, std::vector<std::string>> cell_labels;
    std::map<std::string, double> support;
    std::map<std::pair<std::string, std::string>, double> confidence;
};

// Clusters with dominant products (products associated with more than a
// quarter of the cluster's cells, ordered by cell count then name),
// per-cell labels, support for every labeled product, and confidence for
// every ordered pair of dominant products within one cluster. Pairs whose
// antecedent appears in no basket are omitted.
AssociationReport build_report(const SomGrid& grid, const UMatrix& umatrix,
                               const std::vector<Basket>& baskets,
                               const ProductCatalog& catalog,
                               const ReportParams& params = {});

}  // namespace basketsom
