#pragma once

#include <string>
#include <string_view>

namespace fusionlab {

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

// Fixed-point rendering for SVG coordinates and human-readable summaries.
std::string format_fixed(double value, int decimals);

// p-values below 1e-15 render as "< 1e-15" instead of 0.
std::string format_p_value(double p);

// Strict double parse of the whole field; throws ParseError.
double parse_double(std::string_view text, std::string_view context);

}  // namespace fusionlab
