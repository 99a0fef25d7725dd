#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sing/checks.hpp"
#include "sing/grid.hpp"
#include "sing/report.hpp"

namespace sing::detail {

// Blank CSV cell for columns a section does not use.
inline CsvCell blank() { return std::string{}; }

// Sum of three complex Gaussian bumps, centers in [-2, 2]^n, widths in [0.3, 1].
Field smooth_test_field(const GridSpec& g, std::mt19937_64& rng);

// Grid points drawn uniformly from |x| <= radius.
std::vector<std::size_t> sample_points(const GridSpec& g, double radius, std::size_t count, std::mt19937_64& rng);

// Output sink for one command.
class Outputs {
public:
    Outputs(const RunConfig& cfg, CommandReport& report);
    void csv(const CsvTable& table);
    void plot(const std::string& suffix, const PlotSpec& plot);

private:
    std::filesystem::path dir_;
    bool plots_;
    CommandReport& report_;
};

void add_check(CommandReport& r, std::string name, bool pass, double value, double limit, std::string detail);

}  // namespace sing::detail
