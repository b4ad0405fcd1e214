#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sputnik {

/// Shortest round-trip decimal text; "inf"/"-inf" for infinities, "nan" for NaN.
std::string format_number(double v);
std::string format_number(std::optional<double> v);

/// Splits one CSV line on commas (no quoting; our files never need it).
std::vector<std::string> split_csv_line(std::string_view line);

} // namespace sputnik
