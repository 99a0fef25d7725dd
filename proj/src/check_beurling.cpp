#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "check_util.hpp"
#include "sing/quadrature.hpp"
#include "sing/spectral.hpp"

namespace sing {

namespace {

cplx disc_indicator(const Point& x) { return {x[0] * x[0] + x[1] * x[1] < 1.0 ? 1.0 : 0.0, 0.0}; }

cplx closed_form(const Point& x) {
    const cplx z{x[0], x[1]};
    return 1.0 / (z * z);
}

// C(chi_D): conj(z) inside the disc, 1/z outside.
cplx cauchy_closed_form(const Point& x) {
    const cplx z{x[0], x[1]};
    return std::norm(z) < 1.0 ? std::conj(z) : 1.0 / z;
}

struct BeurlingLevel {
    std::size_t n = 0;
    double sup_error = 0.0;
    Point worst{0.0, 0.0, 0.0};
    cplx at_two;
    cplx at_one_plus_i;
};

}  // namespace

CommandReport cmd_verify_beurling_identity(const RunConfig& cfg) {
    CommandReport report;
    report.command = "verify-beurling-identity";
    detail::Outputs out(cfg, report);
    CsvTable csv({"section", "N", "x", "y", "value_re", "value_im", "expected_re", "expected_im", "error"});

    std::vector<BeurlingLevel> levels;
    Field chi_coarse;
    for (std::size_t n : {cfg.points, cfg.refine_points}) {
        const GridSpec g = make_grid(2, cfg.half_width, n);
        const Field chi = sample_cell_average(disc_indicator, g, cfg.subsamples);
        const Field b = beurling(chi, cfg.padding);
        BeurlingLevel lv;
        lv.n = n;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const Point x = g.point(i);
            const double r = norm(x);
            if (r < cfg.beurling_inner || r > cfg.beurling_outer) continue;
            const cplx expected = closed_form(x);
            const double err = std::abs(b[i] - expected);
            if (err > lv.sup_error) {
                lv.sup_error = err;
                lv.worst = x;
            }
            if (n == cfg.points) {
                csv.add_row({std::string("grid"), n, x[0], x[1], b[i].real(), b[i].imag(), expected.real(),
                             expected.imag(), err});
            }
        }
        lv.at_two = b.evaluate({2.0, 0.0, 0.0});
        lv.at_one_plus_i = b.evaluate({1.0, 1.0, 0.0});
        for (const Point& p : {Point{2.0, 0.0, 0.0}, Point{1.0, 1.0, 0.0}}) {
            const cplx v = b.evaluate(p);
            const cplx e = closed_form(p);
            csv.add_row({std::string("spot"), n, p[0], p[1], v.real(), v.imag(), e.real(), e.imag(), std::abs(v - e)});
        }
        csv.add_row({std::string("refinement"), n, detail::blank(), detail::blank(), detail::blank(), detail::blank(),
                     detail::blank(), detail::blank(), lv.sup_error});
        levels.push_back(lv);
        if (n == cfg.points) chi_coarse = chi;
    }

    // Cauchy route on the coarse grid: C(chi_D) by quadrature against its closed
    // form, and -dC/dz by central differences against 1/z^2.
    const GridSpec& g = chi_coarse.spec();
    const double h = g.spacing();
    double cauchy_err = 0.0;
    double route_err = 0.0;
    const std::array<double, 4> radii{0.5, 1.5, 2.0, 3.0};
    for (std::size_t k = 0; k < cfg.cauchy_points; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cfg.cauchy_points);
        const double r = radii[k % radii.size()];
        const std::size_t idx = g.nearest({r * std::cos(t), r * std::sin(t), 0.0});
        const Point x = g.point(idx);
        const cplx c = cauchy_transform(chi_coarse, idx);
        const cplx ce = cauchy_closed_form(x);
        cauchy_err = std::max(cauchy_err, std::abs(c - ce));
        csv.add_row({std::string("cauchy"), g.points_per_axis(), x[0], x[1], c.real(), c.imag(), ce.real(), ce.imag(),
                     std::abs(c - ce)});
        if (norm(x) < cfg.beurling_inner) continue;
        const MultiIndex m = g.unravel(idx);
        auto at = [&](long dx, long dy) {
            MultiIndex q = m;
            q[0] = static_cast<std::size_t>(static_cast<long>(q[0]) + dx);
            q[1] = static_cast<std::size_t>(static_cast<long>(q[1]) + dy);
            return cauchy_transform(chi_coarse, g.ravel(q));
        };
        const cplx cx = (at(1, 0) - at(-1, 0)) / (2.0 * h);
        const cplx cy = (at(0, 1) - at(0, -1)) / (2.0 * h);
        const cplx route = -0.5 * (cx - cplx{0.0, 1.0} * cy);
        const cplx be = closed_form(x);
        route_err = std::max(route_err, std::abs(route - be));
        csv.add_row({std::string("cauchy_route"), g.points_per_axis(), x[0], x[1], route.real(), route.imag(),
                     be.real(), be.imag(), std::abs(route - be)});
    }
    out.csv(csv);

    const auto& c0 = levels[0];
    const auto& c1 = levels[1];
    detail::add_check(report, fmt::format("sup_error_N{}", c0.n), c0.sup_error <= cfg.tol_beurling, c0.sup_error,
                      cfg.tol_beurling,
                      fmt::format("|B(chi_D) - 1/z^2| on {} <= |z| <= {}, worst at ({}, {})", cfg.beurling_inner,
                                  cfg.beurling_outer, c0.worst[0], c0.worst[1]));
    detail::add_check(report, "refinement_decreases", c1.sup_error < c0.sup_error, c1.sup_error, c0.sup_error,
                      fmt::format("sup error at N = {} must be below the N = {} value", c1.n, c0.n));
    const double e2 = std::abs(c0.at_two - 0.25);
    const double e1i = std::abs(c0.at_one_plus_i - cplx{0.0, -0.5});
    detail::add_check(report, "spot_z_2", e2 <= cfg.tol_beurling, e2, cfg.tol_beurling,
                      fmt::format("B(chi_D)(2) = {} {:+}i, expected 0.25", c0.at_two.real(), c0.at_two.imag()));
    detail::add_check(report, "spot_z_1_plus_i", e1i <= cfg.tol_beurling, e1i, cfg.tol_beurling,
                      fmt::format("B(chi_D)(1+i) = {} {:+}i, expected -0.5i", c0.at_one_plus_i.real(),
                                  c0.at_one_plus_i.imag()));
    detail::add_check(report, "cauchy_transform", cauchy_err <= cfg.tol_beurling, cauchy_err, cfg.tol_beurling,
                      "quadrature C(chi_D) against conj(z) inside, 1/z outside");
    detail::add_check(report, "cauchy_route", route_err <= cfg.tol_beurling, route_err, cfg.tol_beurling,
                      "-dC(chi_D)/dz by central differences against 1/z^2");

    PlotSpec plot;
    plot.title = "B(chi_D) against 1/z^2 under refinement";
    plot.x_label = "N";
    plot.y_label = "sup error";
    plot.log_x = true;
    plot.log_y = true;
    plot.series.push_back({"sup error", {double(c0.n), double(c1.n)}, {c0.sup_error, c1.sup_error}});
    out.plot("refinement", plot);
    return report;
}

}  // namespace sing
