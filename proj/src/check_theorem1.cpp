#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "check_util.hpp"
#include "sing/norms.hpp"
#include "sing/potentials.hpp"
#include "sing/quadrature.hpp"
#include "sing/spectral.hpp"

namespace sing {

namespace {

struct MaximalStats {
    double worst_ratio = 0.0;
    std::string worst_ratio_where;
    double c_s = 0.0;
    std::string c_s_where;
    double mean_ratio_1d = 0.0;
};

TruncationLadder theorem1_ladder(const GridSpec& g, double ratio) {
    std::vector<double> radii;
    for (double r = 2.0 * g.spacing(); r <= g.half_width(); r *= ratio) radii.push_back(r);
    return TruncationLadder::from_radii(radii);
}

// Lp norms of R_j* over strided points against the full-grid Lp norm of R_j f,
// and the pointwise constant in R_j* f <= C M(|R_j f|^2)^(1/2).
void run_battery(const RunConfig& cfg, const GridSpec& g, std::size_t stride, std::size_t field_count,
                 std::uint64_t stream, CsvTable& csv, MaximalStats& stats) {
    const int dim = g.dim();
    const TruncationLadder ladder = theorem1_ladder(g, cfg.theorem1_ladder_ratio);
    const std::size_t n = g.points_per_axis();
    std::vector<std::size_t> points;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const MultiIndex m = g.unravel(i);
        bool keep = true;
        for (int d = 0; d < dim; ++d) keep = keep && (m[d] % stride == 0);
        if (keep) points.push_back(i);
    }
    const double weight = std::pow(static_cast<double>(stride) * g.spacing(), dim);
    (void)n;

    for (std::size_t k = 0; k < field_count; ++k) {
        std::mt19937_64 rng(cfg.seed + stream + k);
        const Field f = detail::smooth_test_field(g, rng);
        for (int j = 1; j <= dim; ++j) {
            const Field rf = riesz(f, j, cfg.padding);
            const Field rf2 = abs_pow(rf, 2.0);
            std::vector<double> star(points.size());
            for (std::size_t q = 0; q < points.size(); ++q) {
                const std::size_t idx = points[q];
                star[q] = maximal_transform(f, KernelSpec::riesz(j), ladder, idx);
                const double m2 = std::sqrt(hl_maximal(rf2, ladder, idx));
                const double c = m2 > 0.0 ? star[q] / m2 : 0.0;
                const Point x = g.point(idx);
                if (c > stats.c_s) {
                    stats.c_s = c;
                    stats.c_s_where = fmt::format("dim {} field {} j {} at ({}, {})", dim, k, j, x[0], x[1]);
                }
                csv.add_row({std::string("point"), dim, k, j, detail::blank(), x[0], dim > 1 ? CsvCell{x[1]} : detail::blank(),
                              star[q], m2, c});
            }
            for (double p : {2.0, 4.0}) {
                double acc = 0.0;
                for (double v : star) acc += std::pow(v, p);
                const double lhs = std::pow(acc * weight, 1.0 / p);
                const double rhs = lp_norm(rf, p);
                const double ratio = lhs / rhs;
                if (ratio > stats.worst_ratio) {
                    stats.worst_ratio = ratio;
                    stats.worst_ratio_where = fmt::format("dim {} field {} j {} p {}", dim, k, j, p);
                }
                if (dim == 1) stats.mean_ratio_1d += ratio / (2.0 * static_cast<double>(field_count));
                csv.add_row({std::string("norm"), dim, k, j, p, detail::blank(), detail::blank(), lhs, rhs, ratio});
            }
        }
    }
}

}  // namespace

CommandReport cmd_verify_theorem1(const RunConfig& cfg) {
    CommandReport report;
    report.command = "verify-theorem1";
    detail::Outputs out(cfg, report);
    CsvTable csv({"section", "dim", "field", "j", "p", "x", "y", "value", "reference", "metric"});

    MaximalStats plane;
    run_battery(cfg, make_grid(2, cfg.half_width, cfg.points), cfg.theorem1_stride, cfg.theorem1_fields, 1000, csv,
                plane);
    MaximalStats line;
    run_battery(cfg, make_grid(1, cfg.line_half_width, cfg.line_points), 1, cfg.theorem1_fields, 2000, csv, line);

    const double worst = std::max(plane.worst_ratio, line.worst_ratio);
    detail::add_check(report, "norm_ratio_cap", worst <= cfg.theorem1_ratio_cap, worst, cfg.theorem1_ratio_cap,
                      fmt::format("max ||R_j* f||_p / ||R_j f||_p over p in {{2, 4}}; worst {}",
                                  plane.worst_ratio >= line.worst_ratio ? plane.worst_ratio_where
                                                                        : line.worst_ratio_where));
    const double c_s = std::max(plane.c_s, line.c_s);
    detail::add_check(report, "pointwise_c2", c_s <= cfg.theorem1_cs_cap, c_s, cfg.theorem1_cs_cap,
                      fmt::format("fitted C_2 in R_j* f <= C_2 M(|R_j f|^2)^(1/2); worst {}",
                                  plane.c_s >= line.c_s ? plane.c_s_where : line.c_s_where));
    report.notes.push_back(fmt::format("n = 1 mean norm ratio {} (maximal truncation of a smooth transform)",
                                       format_double(line.mean_ratio_1d)));

    // decay table of h on the same grid
    const GridSpec g = make_grid(2, cfg.half_width, cfg.points);
    const Field h = h_field(g, {cfg.subsamples, 1, cfg.boundary_tolerance});
    std::vector<double> bins(8, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = norm(g.point(i));
        if (r < 2.0 || r > 4.0) continue;
        const auto b = std::min<std::size_t>(7, static_cast<std::size_t>((r - 2.0) / 0.25));
        bins[b] = std::max(bins[b], std::abs(h[i]) * r * r * r);
    }
    for (std::size_t b = 0; b < bins.size(); ++b) {
        csv.add_row({std::string("h_decay"), 2, detail::blank(), detail::blank(), detail::blank(), 2.0 + 0.25 * (b + 1),
                     detail::blank(), bins[b], detail::blank(), detail::blank()});
    }
    report.notes.push_back(fmt::format("sup |h| |x|^3 on 2 <= |x| <= 4 at N = {}: {}", cfg.points,
                                       format_double(*std::max_element(bins.begin(), bins.end()))));
    out.csv(csv);
    return report;
}

}  // namespace sing
