#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace basketsom::csv {

// Splits one line into fields. Double-quoted fields may contain the
// delimiter; "" inside a quoted field is an escaped quote. Fields never
// span lines.
std::vector<std::string> split_fields(std::string_view line, char delimiter);

// Quotes the field only when it contains the delimiter, a quote or a CR/LF.
std::string quote_field(std::string_view field, char delimiter);

std::string join_fields(std::span<const std::string> fields, char delimiter);

}  // namespace basketsom::csv
