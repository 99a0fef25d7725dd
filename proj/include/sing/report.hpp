#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace sing {

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

using CsvCell = std::variant<double, long long, std::size_t, std::string, bool>;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    // Throws Error when the row width differs from the header.
    void add_row(std::vector<CsvCell> row);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool line = true;
    bool markers = true;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

// Self-contained SVG line/scatter plot.
std::string render_svg(const PlotSpec& plot);

}  // namespace sing
