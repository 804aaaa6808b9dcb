#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace basketsom {

enum class DateOrder { day_month_year, month_day_year, year_month_day };

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    std::string iso() const;  // YYYY-MM-DD

    static std::optional<Date> parse(std::string_view text, DateOrder order,
                                     char separator);
    static std::optional<Date> parse_iso(std::string_view text);
};

/// Input dialect. Defaults match the raw POS export: ';' fields,
/// D/MM/YYYY dates, '.' as thousands separator inside prices.
struct CsvFormatSpec {
    char delimiter = ';';
    char date_separator = '/';
    DateOrder date_order = DateOrder::day_month_year;
    char thousands_separator = '.';
};

/// One product sale line of the raw transaction log.
struct TransactionRow {
    std::string client_id;
    Date transaction_date;
    int weekday = 0;       // 1..7
    int day_of_month = 0;  // 1..31
    int year = 0;
    std::string category;
    std::string subcategory;
    std::string product_name;  // non-empty after trimming
    long price = 0;            // non-negative, whole currency units
};

struct BadRow {
    std::size_t line = 0;  // 1-based, counting the header line
    std::string reason;
};

struct ParseResult {
    std::vector<TransactionRow> rows;
    std::vector<BadRow> bad_rows;
};

// Parses the whole stream. The header must name all nine columns (accepted
// header names include the Spanish POS export names and English aliases;
// matching is case-insensitive). Rows that violate a field invariant are
// collected into bad_rows with their line number and parsing continues.
// Throws EmptyInput when the stream has no header line, MalformedHeader
// when a required column is missing.
ParseResult parse_transactions(std::istream& source,
                               const CsvFormatSpec& format = {});

struct ProductCatalog {
    std::vector<std::string> products;  // unique, sorted lexicographically
    std::unordered_map<std::string, std::size_t> index;

    std::size_t size() const { return products.size(); }
    bool contains(const std::string& name) const {
        return index.contains(name);
    }

    static ProductCatalog from_names(std::vector<std::string> names);
};

// Distinct trimmed product names, sorted lexicographically (byte order).
// Throws EmptyInput on an empty row list.
ProductCatalog build_catalog(const std::vector<TransactionRow>& rows);

/// One transaction (same client, same calendar day) as a binary vector
/// over the catalog.
struct Basket {
    long id = 0;  // sequential from 1
    std::string client_id;
    Date date;
    std::vector<std::uint8_t> bits;  // 0/1, one per catalog product
};

// One basket per distinct (client_id, date) pair; component j is 1 iff that
// pair bought catalog product j at least once. Baskets are ordered by
// (date, client_id) and numbered from 1. Throws UnknownProduct when a row
// names a product absent from the catalog.
std::vector<Basket> group_baskets(const std::vector<TransactionRow>& rows,
                                  const ProductCatalog& catalog);

// Basket matrix file: header `basket_id,client_id,date,<product names...>`,
// then one 0/1 row per basket. Dates are written as YYYY-MM-DD; fields
// containing a comma or quote are double-quoted.
void write_basket_matrix(std::ostream& sink, const std::vector<Basket>& baskets,
                         const ProductCatalog& catalog);

struct BasketMatrix {
    ProductCatalog catalog;
    std::vector<Basket> baskets;
};

BasketMatrix read_basket_matrix(std::istream& source);

// One product name per line; line number - 1 is the column index.
void write_catalog(std::ostream& sink, const ProductCatalog& catalog);

std::string trim(std::string_view s);

}  // namespace basketsom
