#include "sing/checks.hpp"

#include <cmath>

#include <fmt/format.h>

#include "check_util.hpp"
#include "sing/error.hpp"

namespace sing {

bool CommandReport::passed() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return !checks.empty();
}

const CheckResult& CommandReport::check(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw Error(fmt::format("report {} has no check named {}", command, name));
}

std::string format_report(const CommandReport& report) {
    std::string out = fmt::format("== {} ==\n", report.command);
    for (const auto& c : report.checks) {
        out += fmt::format("{} {}: {} (limit {}){}\n", c.pass ? "PASS" : "FAIL", c.name, format_double(c.value),
                           format_double(c.limit), c.detail.empty() ? "" : "; " + c.detail);
    }
    for (const auto& n : report.notes) out += fmt::format("note: {}\n", n);
    for (const auto& f : report.files) out += fmt::format("wrote {}\n", f.string());
    return out;
}

namespace detail {

Field smooth_test_field(const GridSpec& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> center(-2.0, 2.0);
    std::uniform_real_distribution<double> width(0.3, 1.0);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    struct Bump {
        Point c;
        double s;
        cplx a;
    };
    std::vector<Bump> bumps;
    for (int k = 0; k < 3; ++k) {
        Bump b{{0.0, 0.0, 0.0}, 0.0, {}};
        for (int d = 0; d < g.dim(); ++d) b.c[d] = center(rng);
        b.s = width(rng);
        const double re = amp(rng);
        const double im = amp(rng);
        b.a = {re, im};
        bumps.push_back(b);
    }
    return sample(
        [&bumps](const Point& x) {
            cplx v{0.0, 0.0};
            for (const auto& b : bumps) {
                const Point y = x - b.c;
                v += b.a * std::exp(-(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]) / (b.s * b.s));
            }
            return v;
        },
        g);
}

std::vector<std::size_t> sample_points(const GridSpec& g, double radius, std::size_t count, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<std::size_t> out;
    out.reserve(count);
    while (out.size() < count) {
        Point x{0.0, 0.0, 0.0};
        for (int d = 0; d < g.dim(); ++d) x[d] = u(rng);
        const std::size_t idx = g.nearest(x);
        if (norm(g.point(idx)) <= radius) out.push_back(idx);
    }
    return out;
}

Outputs::Outputs(const RunConfig& cfg, CommandReport& report)
    : dir_(cfg.out_dir), plots_(cfg.plots), report_(report) {}

void Outputs::csv(const CsvTable& table) {
    const auto path = dir_ / (report_.command + ".csv");
    write_atomic(path, table.str());
    report_.files.push_back(path);
}

void Outputs::plot(const std::string& suffix, const PlotSpec& plot) {
    if (!plots_) return;
    const auto path = dir_ / (report_.command + "_" + suffix + ".svg");
    write_atomic(path, render_svg(plot));
    report_.files.push_back(path);
}

void add_check(CommandReport& r, std::string name, bool pass, double value, double limit, std::string detail) {
    r.checks.push_back({std::move(name), pass, value, limit, std::move(detail)});
}

}  // namespace detail
}  // namespace sing
