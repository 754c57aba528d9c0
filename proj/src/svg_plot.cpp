#include "fakefeat/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

namespace fakefeat {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 560.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 170.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

double parse_double(const std::string& s, const char* column) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("CSV cell '") + s + "' in column '" + column +
                          "' is not a number");
    }
}

struct AxisScale {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    double transform(double v) const { return log ? std::log10(v) : v; }
    double unit(double v) const {
        const double a = transform(lo);
        const double b = transform(hi);
        if (a == b)
            return 0.5;
        return (transform(v) - a) / (b - a);
    }
    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int first = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
            const int last = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
            for (int e = first; e <= last; ++e)
                out.push_back(std::pow(10.0, e));
            if (out.empty()) {
                out.push_back(lo);
                out.push_back(hi);
            }
        } else {
            const int count = 5;
            for (int i = 0; i <= count; ++i)
                out.push_back(lo + (hi - lo) * i / count);
        }
        return out;
    }
};

} // namespace

std::string render_sweep_svg(const CsvTable& table) {
    const std::vector<std::string> expected = {
        "p_fake",         "lambda",      "jy_analytic_mean", "jy_analytic_std",
        "jy_empirical_mean", "train_err_mean", "bound_value",   "prob_floor",
        "coverage",       "trials"};
    if (table.header != expected)
        throw ConfigError("CSV header does not match the sweep schema");
    if (table.rows.empty())
        throw ConfigError("CSV contains no data rows");

    std::vector<Series> series;
    std::map<std::string, std::size_t> by_label;
    for (const auto& row : table.rows) {
        const std::string& label = row[0];
        auto [it, inserted] = by_label.try_emplace(label, series.size());
        if (inserted)
            series.push_back(Series{label, {}, {}});
        Series& s = series[it->second];
        s.x.push_back(parse_double(row[1], "lambda"));
        s.y.push_back(parse_double(row[2], "jy_analytic_mean"));
    }

    double x_min = series[0].x[0], x_max = x_min;
    double y_min = series[0].y[0], y_max = y_min;
    bool x_positive = true, y_positive = true;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
            x_positive = x_positive && s.x[i] > 0.0;
            y_positive = y_positive && s.y[i] > 0.0;
        }

    AxisScale x_scale{x_positive, x_min, x_max};
    AxisScale y_scale{y_positive, y_min, y_max};
    if (x_min == x_max) { // single column of points, widen a hair
        x_scale.lo = x_positive ? x_min / 2.0 : x_min - 1.0;
        x_scale.hi = x_positive ? x_max * 2.0 : x_max + 1.0;
    }
    if (y_min == y_max) {
        y_scale.lo = y_positive ? y_min / 2.0 : y_min - 1.0;
        y_scale.hi = y_positive ? y_max * 2.0 : y_max + 1.0;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double v) { return kMarginLeft + x_scale.unit(v) * plot_w; };
    auto py = [&](double v) { return kMarginTop + (1.0 - y_scale.unit(v)) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_tick(kWidth) +
           "\" height=\"" + fmt_tick(kHeight) + "\" viewBox=\"0 0 " + fmt_tick(kWidth) + " " +
           fmt_tick(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // frame
    svg += "<rect x=\"" + fmt(kMarginLeft) + "\" y=\"" + fmt(kMarginTop) + "\" width=\"" +
           fmt(plot_w) + "\" height=\"" + fmt(plot_h) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks and grid
    for (double t : x_scale.ticks()) {
        const double x = px(t);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kMarginTop) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(kMarginTop + plot_h) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kMarginTop + plot_h + 18.0) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + fmt_tick(t) + "</text>\n";
    }
    for (double t : y_scale.ticks()) {
        const double y = py(t);
        svg += "<line x1=\"" + fmt(kMarginLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
               fmt(kMarginLeft + plot_w) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(kMarginLeft - 6.0) + "\" y=\"" + fmt(y + 4.0) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt_tick(t) + "</text>\n";
    }

    // axis labels
    svg += "<text x=\"" + fmt(kMarginLeft + plot_w / 2.0) + "\" y=\"" + fmt(kHeight - 14.0) +
           "\" font-size=\"13\" text-anchor=\"middle\">ridge parameter lambda" +
           std::string(x_scale.log ? " (log scale)" : "") + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(kMarginTop + plot_h / 2.0) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           fmt(kMarginTop + plot_h / 2.0) + ")\">mean generalization error" +
           std::string(y_scale.log ? " (log scale)" : "") + "</text>\n";

    // series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        if (s.x.size() > 1) {
            std::string points;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i > 0)
                    points += ' ';
                points += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
            }
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        }
        for (std::size_t i = 0; i < s.x.size(); ++i)
            svg += "<circle cx=\"" + fmt(px(s.x[i])) + "\" cy=\"" + fmt(py(s.y[i])) +
                   "\" r=\"3\" fill=\"" + std::string(color) + "\"/>\n";
    }

    // legend
    const double legend_x = kWidth - kMarginRight + 16.0;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const double y = kMarginTop + 10.0 + 20.0 * static_cast<double>(si);
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg += "<line x1=\"" + fmt(legend_x) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
               fmt(legend_x + 24.0) + "\" y2=\"" + fmt(y) + "\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(legend_x + 30.0) + "\" y=\"" + fmt(y + 4.0) +
               "\" font-size=\"12\">p_fake = " + series[si].label + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace fakefeat
