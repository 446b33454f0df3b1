#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsro::csv {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_real(double v);

/// Locale-independent parse of the whole field; nullopt on any trailing garbage.
std::optional<double> parse_real(std::string_view text);

/// Splits one CSV record on ','. Double-quoted fields may contain commas and
/// "" escapes. Surrounding whitespace and a trailing '\r' are stripped.
std::vector<std::string> split_line(std::string_view line);

/// Quotes a field if it contains ',', '"' or leading/trailing spaces.
std::string escape_field(std::string_view field);

} // namespace fsro::csv
