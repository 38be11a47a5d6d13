#include "fusionlab/csv.hpp"

#include "fusionlab/error.hpp"

namespace fusionlab::csv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        fields.emplace_back(trim(field));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

Table read(std::istream& in, const std::vector<std::string_view>& expected, std::string_view source) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        if (trim(view).empty()) continue;
        auto fields = split_line(view);
        if (!have_header) {
            bool ok = fields.size() == expected.size();
            for (std::size_t i = 0; ok && i < fields.size(); ++i) ok = fields[i] == expected[i];
            if (!ok) {
                std::string want;
                for (std::size_t i = 0; i < expected.size(); ++i) {
                    if (i) want += ',';
                    want += expected[i];
                }
                throw Error(ErrorCode::ParseError,
                            std::string(source) + ": expected header '" + want + "'");
            }
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != expected.size()) {
            throw Error(ErrorCode::ParseError, std::string(source) + ":" + std::to_string(line_no) +
                                                   ": expected " + std::to_string(expected.size()) +
                                                   " fields, got " + std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header) throw Error(ErrorCode::ParseError, std::string(source) + ": empty input");
    return table;
}

}  // namespace fusionlab::csv
