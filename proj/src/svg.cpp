#include "omcool/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "omcool/errors.hpp"

namespace omcool {

namespace {

constexpr double width = 640, height = 480;
constexpr double left = 80, right = 150, top = 30, bottom = 60;
constexpr double plot_w = width - left - right, plot_h = height - top - bottom;

std::string num(double v, const char* fmt = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

// Viridis sampled at five stops.
std::string color(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops{{
        {{68, 1, 84}}, {{59, 82, 139}}, {{33, 145, 140}}, {{94, 201, 98}}, {{253, 231, 37}},
    }};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), 3);
    const double f = t - static_cast<double>(i);
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return !(lo <= hi); }
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

std::string header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, "%.0f") + "\" height=\"" +
           num(height, "%.0f") + "\" viewBox=\"0 0 " + num(width, "%.0f") + " " + num(height, "%.0f") +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Range& x, const Range& y, std::string_view x_label, std::string_view y_label) {
    std::string out;
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) + "\" height=\"" +
           num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double f = i / 4.0;
        const double px = left + f * plot_w, py = top + plot_h - f * plot_h;
        out += "<line x1=\"" + num(px) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(px) + "\" y2=\"" +
               num(top + plot_h + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(px) + "\" y=\"" + num(top + plot_h + 18) + "\" text-anchor=\"middle\">" +
               num(x.lo + f * (x.hi - x.lo), "%.3g") + "</text>\n";
        out += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(left) + "\" y2=\"" + num(py) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(py + 4) + "\" text-anchor=\"end\">" +
               num(y.lo + f * (y.hi - y.lo), "%.3g") + "</text>\n";
    }
    out += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 15) + "\" text-anchor=\"middle\">" +
           escape(x_label) + "</text>\n";
    out += "<text x=\"20\" y=\"" + num(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           num(top + plot_h / 2) + ")\">" + escape(y_label) + "</text>\n";
    return out;
}

std::size_t pick_column(const ResultTable& table, std::string_view column) {
    if (!column.empty()) return table.column_index(column);
    if (const auto* name = table.metadata_value("plot_column"); name && table.has_column(*name))
        return table.column_index(*name);
    for (std::size_t c = table.axis_count; c < table.columns.size(); ++c)
        if (std::holds_alternative<double>(table.rows.front()[c])) return c;
    throw DomainError("table has no numeric output column");
}

std::size_t axis_column(const ResultTable& table, std::size_t axis) {
    // Axis coordinates are the first numeric columns; leading text columns
    // (case or configuration labels) do not count.
    std::size_t seen = 0;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        if (std::holds_alternative<double>(table.rows.front()[c]) && seen++ == axis) return c;
    throw DomainError("table has fewer numeric columns than axes");
}

std::string heatmap(const ResultTable& table, std::string_view column) {
    const std::size_t xc = axis_column(table, 0), yc = axis_column(table, 1);
    const std::size_t vc = pick_column(table, column);

    std::vector<double> xs, ys;
    Range values;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double x = table.number(r, xc), y = table.number(r, yc);
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        if (std::find(ys.begin(), ys.end(), y) == ys.end()) ys.push_back(y);
        values.add(table.number(r, vc));
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const bool log_scale = !values.empty() && values.lo > 0.0 && values.hi / values.lo > 100.0;
    auto norm = [&](double v) {
        if (log_scale) return (std::log10(v) - std::log10(values.lo)) / (std::log10(values.hi) - std::log10(values.lo));
        return (v - values.lo) / values.span();
    };

    Range xr, yr;
    xr.add(xs.front()), xr.add(xs.back()), yr.add(ys.front()), yr.add(ys.back());
    const double cw = plot_w / static_cast<double>(xs.size()), ch = plot_h / static_cast<double>(ys.size());

    std::string out = header();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto ix = static_cast<double>(std::lower_bound(xs.begin(), xs.end(), table.number(r, xc)) - xs.begin());
        const auto iy = static_cast<double>(std::lower_bound(ys.begin(), ys.end(), table.number(r, yc)) - ys.begin());
        const double v = table.number(r, vc);
        out += "<rect class=\"cell\" x=\"" + num(left + ix * cw) + "\" y=\"" + num(top + plot_h - (iy + 1) * ch) + "\" width=\"" +
               num(cw) + "\" height=\"" + num(ch) + "\" fill=\"" + (std::isfinite(v) ? color(norm(v)) : "#bbbbbb") +
               "\"/>\n";
    }
    out += axes(xr, yr, table.columns[xc], table.columns[yc]);

    // Color bar.
    const double bx = left + plot_w + 20, bw = 20;
    for (int i = 0; i < 50; ++i) {
        const double f = i / 50.0;
        out += "<rect x=\"" + num(bx) + "\" y=\"" + num(top + plot_h * (1 - f - 0.02)) + "\" width=\"" + num(bw) +
               "\" height=\"" + num(plot_h * 0.02 + 0.5) + "\" fill=\"" + color(f) + "\"/>\n";
    }
    const std::string suffix = log_scale ? " (log)" : "";
    if (!values.empty()) {
        out += "<text x=\"" + num(bx + bw + 5) + "\" y=\"" + num(top + plot_h) + "\">" + num(values.lo, "%.3g") + "</text>\n";
        out += "<text x=\"" + num(bx + bw + 5) + "\" y=\"" + num(top + 10) + "\">" + num(values.hi, "%.3g") + "</text>\n";
    }
    out += "<text x=\"" + num(bx) + "\" y=\"" + num(top - 10) + "\">" + escape(table.columns[vc]) + suffix + "</text>\n";
    return out + "</svg>\n";
}

std::string line_chart(const ResultTable& table, std::string_view column) {
    const std::size_t xc = axis_column(table, 0);
    std::vector<std::size_t> ycols;
    if (!column.empty()) {
        ycols.push_back(table.column_index(column));
    } else {
        for (const char* prefix : {"n_f_", "p_e_"}) {
            for (std::size_t c = 0; c < table.columns.size(); ++c)
                if (table.columns[c].starts_with(prefix)) ycols.push_back(c);
            if (!ycols.empty()) break;
        }
        if (ycols.empty()) ycols.push_back(pick_column(table, {}));
    }

    std::optional<std::size_t> group;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        if (std::holds_alternative<std::string>(table.rows.front()[c])) {
            group = c;
            break;
        }

    // Series keyed by (group label, y column), in first-appearance order.
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
    std::map<std::string, std::size_t> index;
    Range xr, yr;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string label = group ? std::get<std::string>(table.rows[r][*group]) : std::string();
        for (auto yc : ycols) {
            const std::string key = (label.empty() ? "" : label + " ") + table.columns[yc];
            auto [it, inserted] = index.try_emplace(key, series.size());
            if (inserted) series.push_back({key, {}});
            const double x = table.number(r, xc), y = table.number(r, yc);
            series[it->second].second.emplace_back(x, y);
            xr.add(x);
            yr.add(y);
        }
    }
    if (xr.empty()) throw DomainError("line chart has no finite x values");
    if (yr.empty()) yr.add(0.0), yr.add(1.0);
    if (yr.lo == yr.hi) yr.lo -= 0.5, yr.hi += 0.5;
    if (xr.lo == xr.hi) xr.lo -= 0.5, xr.hi += 0.5;

    auto px = [&](double x) { return left + (x - xr.lo) / xr.span() * plot_w; };
    auto py = [&](double y) { return top + plot_h - (y - yr.lo) / yr.span() * plot_h; };

    std::string out = header();
    out += axes(xr, yr, table.columns[xc], ycols.size() == 1 ? table.columns[ycols[0]] : "value");
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* stroke = palette[s % palette.size()];
        std::string points;
        auto flush = [&] {
            if (!points.empty())
                out += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"1.5\" points=\"" +
                       points + "\"/>\n";
            points.clear();
        };
        for (const auto& [x, y] : series[s].second) {
            if (!std::isfinite(y)) {
                flush();
                continue;
            }
            points += (points.empty() ? "" : " ") + num(px(x)) + "," + num(py(y));
        }
        flush();
        const double ly = top + 10 + 16 * static_cast<double>(s);
        out += "<line x1=\"" + num(left + plot_w + 10) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(left + plot_w + 30) +
               "\" y2=\"" + num(ly) + "\" stroke=\"" + stroke + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(left + plot_w + 35) + "\" y=\"" + num(ly + 4) + "\">" + escape(series[s].first) +
               "</text>\n";
    }
    return out + "</svg>\n";
}

}  // namespace

std::string render_svg(const ResultTable& table, std::string_view column) {
    if (table.rows.empty()) throw DomainError("cannot render an empty table");
    if (table.axis_count == 2) return heatmap(table, column);
    if (table.axis_count == 1) return line_chart(table, column);
    throw DomainError("svg output needs a table with one or two axes");
}

}  // namespace omcool
