#include "basketsom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "basketsom/errors.hpp"
#include "basketsom/kernels.hpp"

namespace basketsom {

UMatrix compute_umatrix(const SomGrid& grid) {
    UMatrix umatrix;
    umatrix.rows = grid.rows;
    umatrix.cols = grid.cols;
    umatrix.values.resize(grid.cell_count());
    kernels::umatrix(grid.weights, grid.rows, grid.cols, grid.dim,
                     umatrix.values);
    return umatrix;
}

double percentile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw EmptyInput("percentile of an empty set");
    if (!(p > 0.0) || !(p < 100.0))
        throw Error("percentile must be in (0, 100)");
    std::sort(values.begin(), values.end());
    const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    const double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::vector<Cluster> extract_clusters(const UMatrix& umatrix,
                                      double threshold_percentile) {
    const double tau = percentile_linear(umatrix.values, threshold_percentile);
    const int rows = umatrix.rows;
    const int cols = umatrix.cols;
    auto low = [&](int r, int c) { return umatrix.at(r, c) <= tau; };

    std::vector<Cluster> clusters;
    std::vector<bool> visited(umatrix.values.size(), false);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const std::size_t start = static_cast<std::size_t>(r) * cols + c;
            if (visited[start] || !low(r, c)) continue;
            // BFS flood fill over the 4-neighborhood.
            Cluster cluster;
            std::deque<CellIndex> frontier{{r, c}};
            visited[start] = true;
            while (!frontier.empty()) {
                const CellIndex cell = frontier.front();
                frontier.pop_front();
                cluster.cells.push_back(cell);
                static constexpr int kOffsets[4][2] = {
                    {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
                for (const auto& offset : kOffsets) {
                    const int nr = cell.row + offset[0];
                    const int nc = cell.col + offset[1];
                    if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                    const std::size_t index =
                        static_cast<std::size_t>(nr) * cols + nc;
                    if (visited[index] || !low(nr, nc)) continue;
                    visited[index] = true;
                    frontier.push_back({nr, nc});
                }
            }
            std::sort(cluster.cells.begin(), cluster.cells.end());
            clusters.push_back(std::move(cluster));
        }
    }

    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const Cluster& a, const Cluster& b) {
                         if (a.cells.size() != b.cells.size())
                             return a.cells.size() > b.cells.size();
                         return a.cells.front() < b.cells.front();
                     });
    for (std::size_t i = 0; i < clusters.size(); ++i)
        clusters[i].id = static_cast<int>(i) + 1;
    return clusters;
}

std::map<CellIndex, std::vector<std::string>> cell_associations(
    const SomGrid& grid, const ProductCatalog& catalog, double theta) {
    if (grid.dim != catalog.size())
        throw DimensionMismatch("grid dimension " + std::to_string(grid.dim) +
                                " does not match catalog size " +
                                std::to_string(catalog.size()));
    if (!(theta > 0.0) || theta > 1.0)
        throw Error("theta must be in (0, 1]");

    std::map<CellIndex, std::vector<std::string>> labels;
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            const auto weights = grid.weight_at(r, c);
            std::vector<std::pair<double, std::string>> hits;
            for (std::size_t j = 0; j < grid.dim; ++j) {
                if (weights[j] >= theta)
                    hits.emplace_back(weights[j], catalog.products[j]);
            }
            std::sort(hits.begin(), hits.end(), [](const auto& a,
                                                   const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
            auto& names = labels[{r, c}];
            names.reserve(hits.size());
            for (auto& [value, name] : hits) names.push_back(std::move(name));
        }
    }
    return labels;
}

namespace {

std::size_t product_index(const ProductCatalog& catalog,
                          const std::string& product) {
    const auto it = catalog.index.find(product);
    if (it == catalog.index.end())
        throw UnknownProduct("product not in catalog: '" + product + "'");
    return it->second;
}

long count_containing(const std::vector<Basket>& baskets, std::size_t j) {
    long count = 0;
    for (const auto& basket : baskets) count += basket.bits[j] != 0;
    return count;
}

}  // namespace

double support(const std::vector<Basket>& baskets,
               const ProductCatalog& catalog, const std::string& product) {
    if (baskets.empty()) throw EmptyInput("support over zero baskets");
    const std::size_t j = product_index(catalog, product);
    return static_cast<double>(count_containing(baskets, j)) /
           static_cast<double>(baskets.size());
}

double confidence(const std::vector<Basket>& baskets,
                  const ProductCatalog& catalog, const std::string& a,
                  const std::string& b) {
    if (baskets.empty()) throw EmptyInput("confidence over zero baskets");
    if (a == b) throw Error("confidence requires two distinct products");
    const std::size_t ja = product_index(catalog, a);
    const std::size_t jb = product_index(catalog, b);
    long count_a = 0;
    long count_ab = 0;
    for (const auto& basket : baskets) {
        if (basket.bits[ja] == 0) continue;
        ++count_a;
        count_ab += basket.bits[jb] != 0;
    }
    if (count_a == 0)
        throw UndefinedConditional("no basket contains '" + a + "'");
    return static_cast<double>(count_ab) / static_cast<double>(count_a);
}

AssociationReport build_report(const SomGrid& grid, const UMatrix& umatrix,
                               const std::vector<Basket>& baskets,
                               const ProductCatalog& catalog,
                               const ReportParams& params) {
    AssociationReport report;
    report.clusters = extract_clusters(umatrix, params.threshold_percentile);
    report.cell_labels = cell_associations(grid, catalog, params.theta);

    for (auto& cluster : report.clusters) {
        std::map<std::string, std::size_t> counts;
        for (const CellIndex& cell : cluster.cells)
            for (const auto& name : report.cell_labels[cell]) ++counts[name];
        // Dominant: labeled in more than a quarter of the cluster's cells.
        std::vector<std::pair<std::size_t, std::string>> ranked;
        for (const auto& [name, count] : counts)
            if (count * 4 > cluster.cells.size())
                ranked.emplace_back(count, name);
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                  });
        cluster.dominant_products.reserve(ranked.size());
        for (auto& [count, name] : ranked)
            cluster.dominant_products.push_back(std::move(name));
    }

    std::set<std::string> labeled;
    for (const auto& [cell, names] : report.cell_labels)
        labeled.insert(names.begin(), names.end());
    for (const auto& name : labeled)
        report.support[name] = support(baskets, catalog, name);

    for (const auto& cluster : report.clusters) {
        for (const auto& a : cluster.dominant_products) {
            if (report.support.at(a) == 0.0) continue;  // conditional undefined
            for (const auto& b : cluster.dominant_products) {
                if (a == b) continue;
                report.confidence.try_emplace(
                    {a, b}, confidence(baskets, catalog, a, b));
            }
        }
    }
    return report;
}

}  // namespace basketsom
