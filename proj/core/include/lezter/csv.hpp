#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lezter::csv {

/// Reals are written with 9 significant digits.
std::string format_real(double value);
double parse_real(std::string_view text);

std::vector<std::string> split_line(std::string_view line, char sep = ',');

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads a comma-separated file whose first line is a header.
Table read(std::istream& in);
Table read_file(const std::string& path);

/// One numeric column (0-based index) of a table.
std::vector<double> column_as_reals(const Table& table, std::size_t column);

}  // namespace lezter::csv
