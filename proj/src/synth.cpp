#include "basketsom/synth.hpp"

#include <algorithm>
#include <string>

#include "basketsom/errors.hpp"
#include "basketsom/rng.hpp"

namespace basketsom {

void SynthSpec::validate() const {
    if (n_baskets < 1) throw Error("n_baskets must be >= 1");
    if (n_products < 1) throw Error("n_products must be >= 1");
    if (groups.empty()) throw Error("at least one product group is required");
    if (p_bg < 0.0 || p_bg > 1.0) throw Error("p_bg must be in [0, 1]");
    for (const auto& group : groups) {
        if (!(group.p_in > p_bg) || group.p_in > 1.0)
            throw Error("each group needs p_bg < p_in <= 1");
        for (const std::size_t j : group.products)
            if (j >= n_products)
                throw Error("group product index " + std::to_string(j) +
                            " out of range [0, " +
                            std::to_string(n_products) + ")");
    }
}

std::vector<Basket> generate(const SynthSpec& spec) {
    spec.validate();

    std::vector<std::vector<std::uint8_t>> member(
        spec.groups.size(), std::vector<std::uint8_t>(spec.n_products, 0));
    for (std::size_t g = 0; g < spec.groups.size(); ++g)
        for (const std::size_t j : spec.groups[g].products) member[g][j] = 1;

    SeededRng rng(spec.seed);
    std::vector<Basket> baskets;
    baskets.reserve(spec.n_baskets);
    const Date date{2011, 1, 1};

    for (std::size_t i = 0; i < spec.n_baskets; ++i) {
        Basket basket;
        basket.id = static_cast<long>(i) + 1;
        basket.client_id = "C" + std::to_string(i + 1);
        basket.date = date;
        bool any = false;
        while (!any) {  // all-zero draws are redrawn from the group pick on
            const std::size_t g = static_cast<std::size_t>(
                rng.uniform_index(spec.groups.size()));
            const double p_in = spec.groups[g].p_in;
            basket.bits.assign(spec.n_products, 0);
            for (std::size_t j = 0; j < spec.n_products; ++j) {
                const double p = member[g][j] ? p_in : spec.p_bg;
                if (rng.bernoulli(p)) {
                    basket.bits[j] = 1;
                    any = true;
                }
            }
        }
        baskets.push_back(std::move(basket));
    }
    return baskets;
}

ProductCatalog synth_catalog(std::size_t n_products) {
    if (n_products < 1) throw Error("n_products must be >= 1");
    const std::size_t width = std::to_string(n_products - 1).size();
    std::vector<std::string> names;
    names.reserve(n_products);
    for (std::size_t i = 0; i < n_products; ++i) {
        std::string digits = std::to_string(i);
        names.push_back("P" + std::string(width - digits.size(), '0') +
                        digits);
    }
    return ProductCatalog::from_names(std::move(names));
}

PairCounts oracle_pair_counts(const std::vector<Basket>& baskets) {
    if (baskets.empty())
        throw EmptyInput("pair counts over zero baskets");
    PairCounts result;
    result.dim = baskets.front().bits.size();
    result.counts.assign(result.dim * result.dim, 0);
    for (const auto& basket : baskets) {
        for (std::size_t i = 0; i < result.dim; ++i) {
            if (!basket.bits[i]) continue;
            ++result.counts[i * result.dim + i];
            for (std::size_t j = i + 1; j < result.dim; ++j) {
                if (!basket.bits[j]) continue;
                ++result.counts[i * result.dim + j];
                ++result.counts[j * result.dim + i];
            }
        }
    }
    return result;
}

}  // namespace basketsom
