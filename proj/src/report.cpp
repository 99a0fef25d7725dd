#include "sing/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "sing/error.hpp"

namespace sing {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("cannot format a double");
    return {buf.data(), ptr};
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const CsvCell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return quote(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "1" : "0";
            } else {
                return std::to_string(v);
            }
        },
        c);
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<CsvCell> row) {
    if (row.size() != header_.size()) {
        throw Error(fmt::format("CSV row has {} cells, header has {}", row.size(), header_.size()));
    }
    std::vector<std::string> text;
    text.reserve(row.size());
    for (const auto& c : row) text.push_back(cell_text(c));
    rows_.push_back(std::move(text));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    std::vector<std::string> head;
    for (const auto& h : header_) head.push_back(quote(h));
    line(head);
    for (const auto& r : rows_) line(r);
    return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(fmt::format("cannot open {} for writing", tmp.string()));
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(fmt::format("failed writing {}", tmp.string()));
    }
    std::filesystem::rename(tmp, path);
}

namespace {

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double map(double v) const {
        const double t = log ? std::log10(v) : v;
        return (t - lo) / (hi - lo);
    }
};

Axis make_axis(const std::vector<const std::vector<double>*>& data, bool log) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto* v : data) {
        for (double x : *v) {
            if (!std::isfinite(x) || (log && x <= 0.0)) continue;
            const double t = log ? std::log10(x) : x;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad, log};
}

std::string tick_label(double t, bool log) {
    return log ? fmt::format("1e{}", static_cast<int>(std::round(t))) : fmt::format("{:.3g}", t);
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    constexpr double W = 640;
    constexpr double H = 420;
    constexpr double left = 70;
    constexpr double right = 170;
    constexpr double top = 40;
    constexpr double bottom = 50;
    const double pw = W - left - right;
    const double ph = H - top - bottom;
    static const std::array<const char*, 6> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

    std::vector<const std::vector<double>*> xs;
    std::vector<const std::vector<double>*> ys;
    for (const auto& s : plot.series) {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    const Axis ax = make_axis(xs, plot.log_x);
    const Axis ay = make_axis(ys, plot.log_y);
    auto px = [&](double v) { return left + ax.map(v) * pw; };
    auto py = [&](double v) { return top + (1.0 - ay.map(v)) * ph; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        W, H, W, H);
    svg += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n", left + pw / 2,
                       escape_xml(plot.title));
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left, top,
                       pw, ph);

    for (int k = 0; k <= 4; ++k) {
        const double tx = ax.lo + (ax.hi - ax.lo) * k / 4.0;
        const double ty = ay.lo + (ay.hi - ay.lo) * k / 4.0;
        const double gx = left + pw * k / 4.0;
        const double gy = top + ph * (1.0 - k / 4.0);
        svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#ddd\"/>\n", gx, top, top + ph);
        svg += fmt::format("<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#ddd\"/>\n", gy, left, left + pw);
        svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", gx, top + ph + 16,
                           tick_label(tx, ax.log));
        svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", left - 6, gy + 4,
                           tick_label(ty, ay.log));
    }
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2, H - 12,
                       escape_xml(plot.x_label));
    svg += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
                       top + ph / 2, escape_xml(plot.y_label));

    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const auto& s = plot.series[si];
        const char* color = colors[si % colors.size()];
        std::string pts;
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            if ((plot.log_x && s.x[k] <= 0.0) || (plot.log_y && s.y[k] <= 0.0)) continue;
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            pts += fmt::format("{:.2f},{:.2f} ", px(s.x[k]), py(s.y[k]));
            if (s.markers) {
                svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px(s.x[k]), py(s.y[k]),
                                   color);
            }
        }
        if (s.line && !pts.empty()) {
            svg += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", pts, color);
        }
        const double ly = top + 14 + 18.0 * static_cast<double>(si);
        svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"3\" fill=\"{}\"/>\n", left + pw + 12, ly - 4,
                           color);
        svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", left + pw + 30, ly, escape_xml(s.label));
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace sing
