#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "basketsom/ingest.hpp"

namespace basketsom {

struct ProductGroup {
    std::vector<std::size_t> products;  // indices into [0, n_products)
    double p_in = 0.8;
};

/// Seeded generator spec for basket datasets with planted co-purchase
/// groups; the test bed standing in for real transaction data.
struct SynthSpec {
    std::size_t n_baskets = 0;
    std::size_t n_products = 0;
    std::vector<ProductGroup> groups;
    double p_bg = 0.0;  // inclusion probability outside the drawn group
    std::uint64_t seed = 1;

    void validate() const;  // indices in range, 0 <= p_bg < p_in <= 1
};

// Each basket draws one group uniformly, then includes each group product
// with p_in and every other product with p_bg; all-zero draws are redrawn
// from scratch (group pick included). Baskets are numbered from 1 with
// client ids "C1", "C2", ... and a fixed date.
std::vector<Basket> generate(const SynthSpec& spec);

// Catalog "P0".."P<n-1>" zero-padded so lexicographic order equals index
// order.
ProductCatalog synth_catalog(std::size_t n_products);

/// Exhaustive co-occurrence counts; the diagonal holds per-product counts.
/// Deliberately naive and independent of the analysis statistics.
struct PairCounts {
    std::size_t dim = 0;
    std::vector<long> counts;  // dim x dim, symmetric

    long at(std::size_t i, std::size_t j) const { return counts[i * dim + j]; }
};

PairCounts oracle_pair_counts(const std::vector<Basket>& baskets);

}  // namespace basketsom
