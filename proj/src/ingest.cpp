#include "basketsom/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <map>
#include <set>
#include <utility>

#include "basketsom/csv.hpp"
#include "basketsom/errors.hpp"

namespace basketsom {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::optional<long> parse_long(std::string_view s) {
    long value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

// Column kinds of the nine-column transaction log, in canonical order.
enum class Column {
    client,
    date,
    weekday,
    day_of_month,
    year,
    category,
    subcategory,
    product,
    price,
};

constexpr std::size_t kColumnCount = 9;

const char* canonical_name(Column c) {
    switch (c) {
        case Column::client: return "client_id";
        case Column::date: return "date";
        case Column::weekday: return "weekday";
        case Column::day_of_month: return "day_of_month";
        case Column::year: return "year";
        case Column::category: return "category";
        case Column::subcategory: return "subcategory";
        case Column::product: return "product";
        case Column::price: return "price";
    }
    return "";
}

// Accepted header spellings (lowercased): the Spanish POS export headers
// plus English aliases. The raw export labels the day-of-month column "Mes".
const std::vector<std::string>& aliases(Column c) {
    static const std::array<std::vector<std::string>, kColumnCount> table = {{
        {"id cliente", "id_cliente", "cliente", "client_id", "client"},
        {"fecha transacción", "fecha transaccion", "fecha", "date",
         "transaction_date"},
        {"dia", "día", "dia semana", "día semana", "weekday", "dia_semana"},
        {"mes", "dia mes", "día mes", "dia_mes", "day_of_month"},
        {"año", "ano", "anio", "year"},
        {"categoría", "categoria", "category"},
        {"sub-categoría", "sub-categoria", "subcategoria", "sub categoria",
         "subcategory"},
        {"producto", "product", "product_name", "nombre producto"},
        {"precio", "price"},
    }};
    return table[static_cast<std::size_t>(c)];
}

bool getline_any(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
        --end;
    return std::string(s.substr(begin, end - begin));
}

bool Date::valid() const {
    const std::chrono::year_month_day ymd{
        std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
        std::chrono::day{static_cast<unsigned>(day)}};
    return ymd.ok();
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::optional<Date> Date::parse(std::string_view text, DateOrder order,
                                char separator) {
    std::array<long, 3> parts{};
    std::size_t part = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == separator) {
            if (part >= 3) return std::nullopt;
            const auto value = parse_long(text.substr(start, i - start));
            if (!value) return std::nullopt;
            parts[part++] = *value;
            start = i + 1;
        }
    }
    if (part != 3) return std::nullopt;

    Date date;
    switch (order) {
        case DateOrder::day_month_year:
            date = {static_cast<int>(parts[2]), static_cast<int>(parts[1]),
                    static_cast<int>(parts[0])};
            break;
        case DateOrder::month_day_year:
            date = {static_cast<int>(parts[2]), static_cast<int>(parts[0]),
                    static_cast<int>(parts[1])};
            break;
        case DateOrder::year_month_day:
            date = {static_cast<int>(parts[0]), static_cast<int>(parts[1]),
                    static_cast<int>(parts[2])};
            break;
    }
    if (!date.valid()) return std::nullopt;
    return date;
}

std::optional<Date> Date::parse_iso(std::string_view text) {
    return parse(text, DateOrder::year_month_day, '-');
}

ParseResult parse_transactions(std::istream& source,
                               const CsvFormatSpec& format) {
    std::string line;
    if (!getline_any(source, line))
        throw EmptyInput("input is empty: no header line");

    const auto header = csv::split_fields(line, format.delimiter);
    std::array<std::size_t, kColumnCount> position{};
    std::array<bool, kColumnCount> found{};
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = ascii_lower(trim(header[i]));
        for (std::size_t c = 0; c < kColumnCount; ++c) {
            const auto& names = aliases(static_cast<Column>(c));
            if (std::find(names.begin(), names.end(), name) != names.end() &&
                !found[c]) {
                position[c] = i;
                found[c] = true;
            }
        }
    }
    for (std::size_t c = 0; c < kColumnCount; ++c) {
        if (!found[c])
            throw MalformedHeader(std::string("missing column: ") +
                                  canonical_name(static_cast<Column>(c)));
    }

    ParseResult result;
    std::size_t line_no = 1;
    auto field = [&](const std::vector<std::string>& fields, Column c) {
        return trim(fields[position[static_cast<std::size_t>(c)]]);
    };

    while (getline_any(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;

        const auto fields = csv::split_fields(line, format.delimiter);
        auto reject = [&](std::string reason) {
            result.bad_rows.push_back({line_no, std::move(reason)});
        };
        if (fields.size() != header.size()) {
            reject("expected " + std::to_string(header.size()) +
                   " fields, got " + std::to_string(fields.size()));
            continue;
        }

        TransactionRow row;
        row.client_id = field(fields, Column::client);
        if (row.client_id.empty()) {
            reject("empty client id");
            continue;
        }

        const std::string date_text = field(fields, Column::date);
        const auto date =
            Date::parse(date_text, format.date_order, format.date_separator);
        if (!date) {
            reject("invalid date: '" + date_text + "'");
            continue;
        }
        row.transaction_date = *date;

        const auto weekday = parse_long(field(fields, Column::weekday));
        if (!weekday || *weekday < 1 || *weekday > 7) {
            reject("weekday out of range [1,7]: '" +
                   field(fields, Column::weekday) + "'");
            continue;
        }
        row.weekday = static_cast<int>(*weekday);

        const auto day = parse_long(field(fields, Column::day_of_month));
        if (!day || *day < 1 || *day > 31) {
            reject("day of month out of range [1,31]: '" +
                   field(fields, Column::day_of_month) + "'");
            continue;
        }
        row.day_of_month = static_cast<int>(*day);

        const auto year = parse_long(field(fields, Column::year));
        if (!year) {
            reject("invalid year: '" + field(fields, Column::year) + "'");
            continue;
        }
        row.year = static_cast<int>(*year);

        row.category = field(fields, Column::category);
        row.subcategory = field(fields, Column::subcategory);

        row.product_name = field(fields, Column::product);
        if (row.product_name.empty()) {
            reject("empty product name");
            continue;
        }

        std::string price_text = field(fields, Column::price);
        std::erase(price_text, format.thousands_separator);
        const auto price = parse_long(price_text);
        if (!price || *price < 0) {
            reject("invalid price: '" + field(fields, Column::price) + "'");
            continue;
        }
        row.price = *price;

        result.rows.push_back(std::move(row));
    }
    return result;
}

ProductCatalog ProductCatalog::from_names(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    ProductCatalog catalog;
    catalog.products = std::move(names);
    catalog.index.reserve(catalog.products.size());
    for (std::size_t i = 0; i < catalog.products.size(); ++i)
        catalog.index.emplace(catalog.products[i], i);
    return catalog;
}

ProductCatalog build_catalog(const std::vector<TransactionRow>& rows) {
    if (rows.empty()) throw EmptyInput("cannot build a catalog from zero rows");
    std::vector<std::string> names;
    names.reserve(rows.size());
    for (const auto& row : rows) names.push_back(trim(row.product_name));
    return ProductCatalog::from_names(std::move(names));
}

std::vector<Basket> group_baskets(const std::vector<TransactionRow>& rows,
                                  const ProductCatalog& catalog) {
    // Key order (date, client_id) is the output order.
    std::map<std::pair<Date, std::string>, std::vector<std::uint8_t>> groups;
    for (const auto& row : rows) {
        const std::string name = trim(row.product_name);
        const auto it = catalog.index.find(name);
        if (it == catalog.index.end())
            throw UnknownProduct("product not in catalog: '" + name + "'");
        auto& bits = groups[{row.transaction_date, row.client_id}];
        if (bits.empty()) bits.assign(catalog.size(), 0);
        bits[it->second] = 1;
    }

    std::vector<Basket> baskets;
    baskets.reserve(groups.size());
    long next_id = 1;
    for (auto& [key, bits] : groups) {
        Basket basket;
        basket.id = next_id++;
        basket.date = key.first;
        basket.client_id = key.second;
        basket.bits = std::move(bits);
        baskets.push_back(std::move(basket));
    }
    return baskets;
}

void write_basket_matrix(std::ostream& sink,
                         const std::vector<Basket>& baskets,
                         const ProductCatalog& catalog) {
    std::vector<std::string> header = {"basket_id", "client_id", "date"};
    header.insert(header.end(), catalog.products.begin(),
                  catalog.products.end());
    sink << csv::join_fields(header, ',') << '\n';
    for (const auto& basket : baskets) {
        sink << basket.id << ',' << csv::quote_field(basket.client_id, ',')
             << ',' << basket.date.iso();
        for (const std::uint8_t bit : basket.bits)
            sink << ',' << (bit ? '1' : '0');
        sink << '\n';
    }
    if (!sink) throw IoError("failed writing basket matrix");
}

BasketMatrix read_basket_matrix(std::istream& source) {
    std::string line;
    if (!getline_any(source, line))
        throw EmptyInput("basket matrix is empty: no header line");
    auto header = csv::split_fields(line, ',');
    if (header.size() < 4 || header[0] != "basket_id" ||
        header[1] != "client_id" || header[2] != "date")
        throw MalformedHeader(
            "basket matrix header must start with basket_id,client_id,date");

    BasketMatrix matrix;
    // Column order in the file defines the catalog order.
    matrix.catalog.products.assign(header.begin() + 3, header.end());
    for (std::size_t i = 0; i < matrix.catalog.products.size(); ++i)
        matrix.catalog.index.emplace(matrix.catalog.products[i], i);
    const std::size_t dim = matrix.catalog.size();

    std::size_t line_no = 1;
    while (getline_any(source, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = csv::split_fields(line, ',');
        const std::string where = " (line " + std::to_string(line_no) + ")";
        if (fields.size() != dim + 3)
            throw Error("basket matrix row has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(dim + 3) + where);
        Basket basket;
        const auto id = parse_long(fields[0]);
        if (!id) throw Error("bad basket id '" + fields[0] + "'" + where);
        basket.id = *id;
        basket.client_id = fields[1];
        const auto date = Date::parse_iso(fields[2]);
        if (!date) throw Error("bad date '" + fields[2] + "'" + where);
        basket.date = *date;
        basket.bits.reserve(dim);
        for (std::size_t i = 3; i < fields.size(); ++i) {
            if (fields[i] == "0")
                basket.bits.push_back(0);
            else if (fields[i] == "1")
                basket.bits.push_back(1);
            else
                throw Error("basket component must be 0 or 1, got '" +
                            fields[i] + "'" + where);
        }
        matrix.baskets.push_back(std::move(basket));
    }
    return matrix;
}

void write_catalog(std::ostream& sink, const ProductCatalog& catalog) {
    for (const auto& name : catalog.products) sink << name << '\n';
    if (!sink) throw IoError("failed writing catalog");
}

}  // namespace basketsom
