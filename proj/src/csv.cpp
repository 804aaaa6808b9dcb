#include "basketsom/csv.hpp"

namespace basketsom::csv {

std::vector<std::string> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && current.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
        ++i;
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string quote_field(std::string_view field, char delimiter) {
    const bool needs_quotes =
        field.find(delimiter) != std::string_view::npos ||
        field.find('"') != std::string_view::npos ||
        field.find('\n') != std::string_view::npos ||
        field.find('\r') != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join_fields(std::span<const std::string> fields, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(delimiter);
        out += quote_field(fields[i], delimiter);
    }
    return out;
}

}  // namespace basketsom::csv
