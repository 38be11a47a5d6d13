#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace fusionlab::csv {

// Minimal reader for the flat, unquoted tables this tool exchanges.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line per row
};

// Reads a table and checks the header matches `expected` exactly.
// Blank lines are skipped; CR line endings and a UTF-8 BOM are tolerated.
Table read(std::istream& in, const std::vector<std::string_view>& expected, std::string_view source);

std::vector<std::string> split_line(std::string_view line);

}  // namespace fusionlab::csv
