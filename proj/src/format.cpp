#include "fusionlab/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "fusionlab/error.hpp"

namespace fusionlab {

std::string format_double(double value) {
    if (value == 0.0) return "0";  // folds -0 into 0
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error(ErrorCode::OutOfRange, "cannot format double");
    return std::string(buf.data(), end);
}

std::string format_fixed(double value, int decimals) {
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
    std::string out(buf.data());
    if (out.starts_with("-") && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string format_p_value(double p) {
    if (p < 1e-15) return "< 1e-15";
    return format_double(p);
}

double parse_double(std::string_view text, std::string_view context) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw Error(ErrorCode::ParseError,
                    std::string(context) + ": not a number: '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::ParseError,
                    std::string(context) + ": non-finite value: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace fusionlab
