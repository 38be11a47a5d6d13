#include "fusionlab/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fusionlab/format.hpp"

namespace fusionlab::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 110.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = std::abs(lo) > 0.0 ? std::abs(lo) * 0.05 : 0.5;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

struct Frame {
    Range x;
    Range y;
    double px(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
    double py(double v) const { return kHeight - kBottom - (v - y.lo) / (y.hi - y.lo) * (kHeight - kTop - kBottom); }
};

std::string f3(double v) { return format_fixed(v, 3); }

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Five-stop blue-to-yellow ramp.
std::string ramp(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops{{
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37},
    }};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const auto k = std::min<std::size_t>(3, static_cast<std::size_t>(t));
    const double f = t - static_cast<double>(k);
    std::array<int, 3> rgb{};
    for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(stops[k][c] + f * (stops[k + 1][c] - stops[k][c])));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

void open_document(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << f3(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
}

void axes(std::ostringstream& out, const Frame& frame, const std::string& x_label, const std::string& y_label) {
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    const double y1 = kTop;
    out << "<g stroke=\"black\" fill=\"none\"><line x1=\"" << f3(x0) << "\" y1=\"" << f3(y0) << "\" x2=\"" << f3(x1)
        << "\" y2=\"" << f3(y0) << "\"/><line x1=\"" << f3(x0) << "\" y1=\"" << f3(y0) << "\" x2=\"" << f3(x0)
        << "\" y2=\"" << f3(y1) << "\"/></g>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = frame.x.lo + (frame.x.hi - frame.x.lo) * k / 4.0;
        const double yv = frame.y.lo + (frame.y.hi - frame.y.lo) * k / 4.0;
        out << "<text x=\"" << f3(frame.px(xv)) << "\" y=\"" << f3(y0 + 16) << "\" text-anchor=\"middle\">"
            << f3(xv) << "</text>\n";
        out << "<text x=\"" << f3(x0 - 6) << "\" y=\"" << f3(frame.py(yv) + 4) << "\" text-anchor=\"end\">" << f3(yv)
            << "</text>\n";
    }
    out << "<text x=\"" << f3((x0 + x1) / 2) << "\" y=\"" << f3(kHeight - 12) << "\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"16\" y=\"" << f3((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << f3((y0 + y1) / 2) << ")\">" << escape(y_label) << "</text>\n";
}

}  // namespace

std::string render(const ScatterChart& chart) {
    std::ostringstream out;
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 0.0, cmin = 0.0, cmax = 1.0;
    if (!chart.points.empty()) {
        xmin = xmax = chart.points.front().x;
        ymin = ymax = chart.points.front().y;
        cmin = cmax = chart.points.front().color;
        for (const auto& p : chart.points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
            cmin = std::min(cmin, p.color);
            cmax = std::max(cmax, p.color);
        }
    }
    if (chart.zero_line) {
        ymin = std::min(ymin, 0.0);
        ymax = std::max(ymax, 0.0);
    }
    Frame frame{padded_range(xmin, xmax), padded_range(ymin, ymax)};
    open_document(out, chart.title);
    axes(out, frame, chart.x_label, chart.y_label);
    if (chart.zero_line) {
        out << "<line x1=\"" << f3(kLeft) << "\" y1=\"" << f3(frame.py(0.0)) << "\" x2=\"" << f3(kWidth - kRight)
            << "\" y2=\"" << f3(frame.py(0.0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }
    out << "<g fill-opacity=\"0.75\">\n";
    for (const auto& p : chart.points) {
        const double t = cmax > cmin ? (p.color - cmin) / (cmax - cmin) : 0.5;
        out << "<circle cx=\"" << f3(frame.px(p.x)) << "\" cy=\"" << f3(frame.py(p.y)) << "\" r=\"2.5\" fill=\""
            << ramp(t) << "\"/>\n";
    }
    out << "</g>\n";

    // color bar
    const double bx = kWidth - kRight + 25;
    const double top = kTop + 10;
    const double bottom = kHeight - kBottom;
    const int steps = 20;
    for (int k = 0; k < steps; ++k) {
        const double h = (bottom - top) / steps;
        out << "<rect x=\"" << f3(bx) << "\" y=\"" << f3(bottom - (k + 1) * h) << "\" width=\"14\" height=\""
            << f3(h + 0.5) << "\" fill=\"" << ramp((k + 0.5) / steps) << "\"/>\n";
    }
    out << "<text x=\"" << f3(bx + 18) << "\" y=\"" << f3(top + 4) << "\">" << f3(cmax) << "</text>\n";
    out << "<text x=\"" << f3(bx + 18) << "\" y=\"" << f3(bottom) << "\">" << f3(cmin) << "</text>\n";
    out << "<text x=\"" << f3(bx) << "\" y=\"" << f3(top - 8) << "\">" << escape(chart.color_label) << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string render(const LineChart& chart) {
    std::ostringstream out;
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    if (!chart.xs.empty()) {
        xmin = *std::min_element(chart.xs.begin(), chart.xs.end());
        xmax = *std::max_element(chart.xs.begin(), chart.xs.end());
        ymin = *std::min_element(chart.ys.begin(), chart.ys.end());
        ymax = *std::max_element(chart.ys.begin(), chart.ys.end());
    }
    for (const auto& r : chart.references) {
        ymin = std::min(ymin, r.y);
        ymax = std::max(ymax, r.y);
    }
    Frame frame{padded_range(xmin, xmax), padded_range(ymin, ymax)};
    open_document(out, chart.title);
    axes(out, frame, chart.x_label, chart.y_label);

    double label_y = kTop + 12;
    for (const auto& r : chart.references) {
        out << "<line x1=\"" << f3(kLeft) << "\" y1=\"" << f3(frame.py(r.y)) << "\" x2=\"" << f3(kWidth - kRight)
            << "\" y2=\"" << f3(frame.py(r.y)) << "\" stroke=\"" << r.stroke << "\" stroke-width=\"1.5\""
            << (r.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        out << "<text x=\"" << f3(kWidth - kRight + 6) << "\" y=\"" << f3(label_y) << "\" fill=\"" << r.stroke
            << "\">" << escape(r.label) << "</text>\n";
        label_y += 14;
    }
    if (chart.marker_x) {
        out << "<line x1=\"" << f3(frame.px(*chart.marker_x)) << "\" y1=\"" << f3(kTop) << "\" x2=\""
            << f3(frame.px(*chart.marker_x)) << "\" y2=\"" << f3(kHeight - kBottom)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    // step function: constant until the next threshold
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < chart.xs.size(); ++k) {
        if (k > 0) out << ' ' << f3(frame.px(chart.xs[k])) << ',' << f3(frame.py(chart.ys[k - 1]));
        out << (k > 0 ? " " : "") << f3(frame.px(chart.xs[k])) << ',' << f3(frame.py(chart.ys[k]));
    }
    out << "\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace fusionlab::svg
