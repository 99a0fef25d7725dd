#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "check_util.hpp"
#include "sing/norms.hpp"
#include "sing/potentials.hpp"
#include "sing/spectral.hpp"

namespace sing {

namespace {

struct HLevel {
    std::size_t n = 0;
    double decay = 0.0;     // max of |h| |x|^(n+1) on 2 <= |x| <= 4
    double residual = 0.0;  // sup |R_1 h - chi K_1| two cells or more from the sphere
    C0Fit fit;
};

HLevel h_level(const RunConfig& cfg, int dim, std::size_t n, CsvTable& csv) {
    const GridSpec g = make_grid(dim, cfg.half_width, n);
    const Field h = h_field(g, {cfg.subsamples, 1, cfg.boundary_tolerance});
    const Field k1 = exterior_kernel(g, 1, cfg.subsamples);
    const Field r1h = riesz(h, 1);
    HLevel lv;
    lv.n = n;
    std::vector<double> bins(8, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.point(i);
        const double r = norm(x);
        if (sphere_distance(x) >= 2.0 * g.spacing()) lv.residual = std::max(lv.residual, std::abs(r1h[i] - k1[i]));
        if (r < 2.0 || r > 4.0) continue;
        const double v = std::abs(h[i]) * std::pow(r, dim + 1);
        lv.decay = std::max(lv.decay, v);
        const auto b = std::min<std::size_t>(7, static_cast<std::size_t>((r - 2.0) / 0.25));
        bins[b] = std::max(bins[b], v);
    }
    for (std::size_t b = 0; b < bins.size(); ++b) {
        csv.add_row({std::string("decay"), std::string("max |h| |x|^(n+1)"), dim, n, detail::blank(), detail::blank(),
                     2.0 + 0.25 * static_cast<double>(b + 1), detail::blank(), bins[b]});
    }
    csv.add_row({std::string("identity"), std::string("sup residual"), dim, n, detail::blank(), detail::blank(),
                 detail::blank(), 2.0 * g.spacing(), lv.residual});
    lv.fit = fit_c0_and_bound_b(h);
    csv.add_row({std::string("c0_fit"), std::string("c0"), dim, n, detail::blank(), detail::blank(), detail::blank(),
                 detail::blank(), lv.fit.c0});
    csv.add_row({std::string("c0_fit"), std::string("b_sup"), dim, n, detail::blank(), detail::blank(),
                 detail::blank(), detail::blank(), lv.fit.b_sup});
    csv.add_row({std::string("c0_fit"), std::string("residual_rms"), dim, n, detail::blank(), detail::blank(),
                 detail::blank(), detail::blank(), lv.fit.residual_rms});
    return lv;
}

struct BandResult {
    double m = 0.0;
    double big_m = 0.0;
    double worst_low = kInfinity;   // min ratio over refinements / m
    double worst_high = 0.0;        // max ratio over refinements / M
    bool monotone = true;
    std::vector<double> d;
    std::vector<double> ratio_inside;
    std::vector<double> ratio_outside;
};

// p / log(1/d) along the x_1 axis on both sides of the sphere, coarse and refined node counts.
BandResult band(const RunConfig& cfg, int dim, CsvTable& csv) {
    BandResult res;
    res.d = log_lambda_grid(cfg.band_dmin, cfg.band_dmax, cfg.band_samples);
    std::vector<std::vector<double>> coarse(2);
    for (int side = 0; side < 2; ++side) {
        const double sign = side == 0 ? -1.0 : 1.0;
        double previous = kInfinity;
        for (double d : res.d) {
            const Point x{1.0 + sign * d, 0.0, 0.0};
            const std::size_t nodes = default_sphere_nodes(d);
            const double p = p_eval(x, {dim, nodes});
            const double ratio = p / std::log(1.0 / d);
            coarse[side].push_back(ratio);
            // d grows along the list, so p must shrink
            if (p > previous) res.monotone = false;
            previous = p;
            csv.add_row({std::string("band"), std::string("p"), dim, detail::blank(), nodes,
                         std::string(side == 0 ? "inside" : "outside"), norm(x), d, p});
            csv.add_row({std::string("band"), std::string("ratio"), dim, detail::blank(), nodes,
                         std::string(side == 0 ? "inside" : "outside"), norm(x), d, ratio});
        }
    }
    res.ratio_inside = coarse[0];
    res.ratio_outside = coarse[1];
    res.m = std::min(*std::min_element(coarse[0].begin(), coarse[0].end()),
                     *std::min_element(coarse[1].begin(), coarse[1].end()));
    res.big_m = std::max(*std::max_element(coarse[0].begin(), coarse[0].end()),
                         *std::max_element(coarse[1].begin(), coarse[1].end()));
    for (std::size_t level = 1; level <= cfg.band_refinements; ++level) {
        const std::size_t factor = std::size_t{1} << level;
        for (int side = 0; side < 2; ++side) {
            const double sign = side == 0 ? -1.0 : 1.0;
            for (double d : res.d) {
                const Point x{1.0 + sign * d, 0.0, 0.0};
                const std::size_t nodes = factor * default_sphere_nodes(d);
                const double ratio = p_eval(x, {dim, nodes}) / std::log(1.0 / d);
                res.worst_low = std::min(res.worst_low, ratio / res.m);
                res.worst_high = std::max(res.worst_high, ratio / res.big_m);
                csv.add_row({std::string("band"), std::string("ratio"), dim, detail::blank(), nodes,
                             std::string(side == 0 ? "inside" : "outside"), norm(x), d, ratio});
            }
        }
    }
    return res;
}

double relative_change(double a, double b) { return std::abs(b - a) / std::max(std::abs(a), 1e-300); }

}  // namespace

CommandReport cmd_verify_potentials(const RunConfig& cfg) {
    CommandReport report;
    report.command = "verify-potentials";
    detail::Outputs out(cfg, report);
    CsvTable csv({"section", "quantity", "dim", "N", "nodes", "side", "r", "d", "value"});

    const HLevel coarse = h_level(cfg, 2, cfg.points, csv);
    const HLevel fine = h_level(cfg, 2, cfg.refine_points, csv);

    const double decay_change = relative_change(coarse.decay, fine.decay);
    detail::add_check(report, "h_decay_stable", decay_change < cfg.tol_decay_change, decay_change,
                      cfg.tol_decay_change,
                      fmt::format("max |h| |x|^3 on 2 <= |x| <= 4: {} (N = {}), {} (N = {})", format_double(coarse.decay),
                                  coarse.n, format_double(fine.decay), fine.n));
    detail::add_check(report, "h_identity_residual", coarse.residual <= cfg.tol_h_residual, coarse.residual,
                      cfg.tol_h_residual,
                      fmt::format("sup |R_1 h - chi K_1| two cells from the circle at N = {}; {} at N = {}", coarse.n,
                                  format_double(fine.residual), fine.n));
    detail::add_check(report, "c0_nonzero", std::abs(fine.fit.c0) > 0.0 && std::isfinite(fine.fit.c0),
                      std::abs(fine.fit.c0), 0.0,
                      fmt::format("h ~ c0 p + beta on d in [2 cells, 0.3]: c0 {} (N = {}), {} (N = {})",
                                  format_double(coarse.fit.c0), coarse.n, format_double(fine.fit.c0), fine.n));
    const double c0_change = relative_change(coarse.fit.c0, fine.fit.c0);
    detail::add_check(report, "c0_stable", c0_change <= cfg.tol_b_change, c0_change, cfg.tol_b_change,
                      "relative change of c0 between the two grids");
    const double b_change = relative_change(coarse.fit.b_sup, fine.fit.b_sup);
    detail::add_check(report, "b_bounded", b_change <= cfg.tol_b_change, b_change, cfg.tol_b_change,
                      fmt::format("sup |h - c0 p|: {} (N = {}), {} (N = {})", format_double(coarse.fit.b_sup),
                                  coarse.n, format_double(fine.fit.b_sup), fine.n));

    const BandResult b2 = band(cfg, 2, csv);
    const bool in_band = b2.worst_low >= cfg.band_low && b2.worst_high <= cfg.band_high;
    detail::add_check(report, "p_log_band", in_band, std::max(b2.worst_high, 1.0 / b2.worst_low), 2.0,
                      fmt::format("refined ratios within [{} m, {} M] with m = {}, M = {}; extremes {} m, {} M",
                                  cfg.band_low, cfg.band_high, format_double(b2.m), format_double(b2.big_m),
                                  format_double(b2.worst_low), format_double(b2.worst_high)));
    detail::add_check(report, "p_monotone", b2.monotone, b2.monotone ? 1.0 : 0.0, 1.0,
                      "p grows as d(x) shrinks on both sides of the circle");

    if (cfg.potentials_dim3) {
        const BandResult b3 = band(cfg, 3, csv);
        const bool in_band3 = b3.worst_low >= cfg.band_low && b3.worst_high <= cfg.band_high;
        detail::add_check(report, "p_log_band_dim3", in_band3, std::max(b3.worst_high, 1.0 / b3.worst_low), 2.0,
                          fmt::format("n = 3, m = {}, M = {}", format_double(b3.m), format_double(b3.big_m)));
        const HLevel h3 = h_level(cfg, 3, cfg.dim3_points, csv);
        report.notes.push_back(fmt::format("n = 3 at N = {}: sup residual {}, max |h| |x|^4 {}, c0 {}", h3.n,
                                           format_double(h3.residual), format_double(h3.decay),
                                           format_double(h3.fit.c0)));
    }

    PlotSpec plot{"p / log(1/d) near the unit circle", "d", "ratio", true, false, {}};
    plot.series.push_back({"inside", b2.d, b2.ratio_inside});
    plot.series.push_back({"outside", b2.d, b2.ratio_outside});
    out.plot("band", plot);
    out.csv(csv);
    return report;
}

}  // namespace sing
