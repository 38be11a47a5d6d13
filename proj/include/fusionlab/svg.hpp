#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fusionlab::svg {

struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
    double color = 0.0;  // mapped onto the color ramp
};

struct ScatterChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string color_label;
    std::vector<ScatterPoint> points;
    bool zero_line = true;  // dashed y = 0 reference
};

struct ReferenceLine {
    double y = 0.0;
    std::string label;
    std::string stroke;
    bool dashed = false;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<ReferenceLine> references;
    std::optional<double> marker_x;  // vertical line, e.g. at lambda*
};

// Deterministic, self-contained SVG documents (fixed 3-decimal coordinates).
std::string render(const ScatterChart& chart);
std::string render(const LineChart& chart);

}  // namespace fusionlab::svg
