#pragma once

#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace sbi::csv {

// Scientific notation with 12 significant digits, e.g. 1.23456789012e+00.
std::string format(double v);
// Empty cell for a missing value.
std::string format(const std::optional<double>& v);

// Hex SHA-256 of a canonical configuration description.
std::string config_digest(std::string_view canonical_config);

// "# config_digest=<hex>" metadata line followed by the header row.
void write_preamble(std::ostream& out, std::string_view digest, std::initializer_list<std::string_view> columns);

void write_row(std::ostream& out, std::initializer_list<std::string> cells);

} // namespace sbi::csv
