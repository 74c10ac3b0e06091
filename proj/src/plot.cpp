#include "dynstate/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dynstate::plot {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double margin = 0.05 * (hi - lo);
        lo -= margin;
        hi += margin;
    }
};

} // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::vector<double>& x, const std::vector<LineSeries>& series) {
    Range xr, yr;
    for (double v : x) xr.include(v);
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            yr.include(s.y[i]);
            if (i < s.spread.size()) {
                yr.include(s.y[i] - s.spread[i]);
                yr.include(s.y[i] + s.spread[i]);
            }
        }
    xr.pad();
    yr.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double v) { return kMarginLeft + plot_w * (v - xr.lo) / (xr.hi - xr.lo); };
    auto sy = [&](double v) { return kMarginTop + plot_h * (1.0 - (v - yr.lo) / (yr.hi - yr.lo)); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    svg << "<text x='" << kWidth / 2 << "' y='" << kHeight - 10
        << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";

    // axes with a few ticks
    svg << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='" << plot_w
        << "' height='" << plot_h << "' fill='none' stroke='#444'/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
        svg << "<text x='" << fmt(sx(fx)) << "' y='" << kHeight - kMarginBottom + 16
            << "' text-anchor='middle' font-size='10'>" << fmt(fx) << "</text>\n";
        svg << "<text x='" << kMarginLeft - 6 << "' y='" << fmt(sy(fy) + 3)
            << "' text-anchor='end' font-size='10'>" << fmt(fy) << "</text>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % 6];
        // spread band
        if (!series[s].spread.empty()) {
            std::ostringstream upper, lower;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (!std::isfinite(series[s].y[i])) continue;
                upper << fmt(sx(x[i])) << ',' << fmt(sy(series[s].y[i] + series[s].spread[i]))
                      << ' ';
            }
            for (std::size_t i = x.size(); i-- > 0;) {
                if (!std::isfinite(series[s].y[i])) continue;
                lower << fmt(sx(x[i])) << ',' << fmt(sy(series[s].y[i] - series[s].spread[i]))
                      << ' ';
            }
            svg << "<polygon points='" << upper.str() << lower.str() << "' fill='" << color
                << "' opacity='0.15'/>\n";
        }
        std::ostringstream line;
        for (std::size_t i = 0; i < x.size() && i < series[s].y.size(); ++i) {
            if (!std::isfinite(series[s].y[i])) continue;
            line << fmt(sx(x[i])) << ',' << fmt(sy(series[s].y[i])) << ' ';
        }
        svg << "<polyline points='" << line.str() << "' fill='none' stroke='" << color
            << "' stroke-width='1.5'/>\n";
        svg << "<text x='" << kWidth - kMarginRight - 4 << "' y='"
            << kMarginTop + 16 + 14 * static_cast<int>(s) << "' text-anchor='end' font-size='11' fill='"
            << color << "'>" << series[s].label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string scatter_with_boundary(const std::string& title,
                                  const std::vector<std::array<double, 2>>& points,
                                  const std::vector<int>& labels,
                                  const std::function<double(double, double)>& decision) {
    Range xr, yr;
    for (const auto& p : points) {
        xr.include(p[0]);
        yr.include(p[1]);
    }
    xr.pad();
    yr.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double v) { return kMarginLeft + plot_w * (v - xr.lo) / (xr.hi - xr.lo); };
    auto sy = [&](double v) { return kMarginTop + plot_h * (1.0 - (v - yr.lo) / (yr.hi - yr.lo)); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "' viewBox='0 0 " << kWidth << ' ' << kHeight << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";

    constexpr int kCells = 60;
    const double cw = plot_w / kCells;
    const double ch = plot_h / kCells;
    for (int i = 0; i < kCells; ++i) {
        for (int j = 0; j < kCells; ++j) {
            const double vx = xr.lo + (xr.hi - xr.lo) * (i + 0.5) / kCells;
            const double vy = yr.lo + (yr.hi - yr.lo) * (j + 0.5) / kCells;
            const char* fill = decision(vx, vy) >= 0.0 ? "#f6dcdc" : "#dce6f6";
            svg << "<rect x='" << fmt(kMarginLeft + i * cw) << "' y='"
                << fmt(kMarginTop + plot_h - (j + 1) * ch) << "' width='" << fmt(cw + 0.5)
                << "' height='" << fmt(ch + 0.5) << "' fill='" << fill << "'/>\n";
        }
    }
    svg << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='" << plot_w
        << "' height='" << plot_h << "' fill='none' stroke='#444'/>\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const char* color = labels[i] >= 0 ? "#d62728" : "#1f77b4";
        svg << "<circle cx='" << fmt(sx(points[i][0])) << "' cy='" << fmt(sy(points[i][1]))
            << "' r='4' fill='" << color << "' stroke='black' stroke-width='0.5'/>\n";
    }
    svg << "<text x='" << kWidth - kMarginRight - 4 << "' y='" << kMarginTop + 16
        << "' text-anchor='end' font-size='11' fill='#d62728'>chaotic</text>\n";
    svg << "<text x='" << kWidth - kMarginRight - 4 << "' y='" << kMarginTop + 30
        << "' text-anchor='end' font-size='11' fill='#1f77b4'>periodic</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace dynstate::plot
