#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "check_util.hpp"
#include "sing/norms.hpp"
#include "sing/quadrature.hpp"
#include "sing/spectral.hpp"

namespace sing {

CommandReport cmd_verify_cotlar(const RunConfig& cfg) {
    CommandReport report;
    report.command = "verify-cotlar";
    detail::Outputs out(cfg, report);
    CsvTable csv({"section", "field", "radius", "x", "y", "lhs", "rhs", "metric", "breach"});

    const GridSpec g = make_grid(2, cfg.half_width, cfg.points);
    const TruncationLadder ladder = TruncationLadder::geometric(cfg.ladder_eps0, cfg.ladder_ratio, cfg.ladder_count);
    if (ladder.restricted_to(g).size() != ladder.size()) {
        throw ResolutionError(fmt::format("Cotlar ladder starts at {}, below the cell diameter {}", ladder.smallest(),
                                          g.cell_diameter()));
    }

    struct Entry {
        std::string label;
        Field f;
    };
    std::vector<Entry> battery;
    for (std::size_t k = 0; k < cfg.cotlar_fields; ++k) {
        std::mt19937_64 rng(cfg.seed + k);
        battery.push_back({fmt::format("smooth{}", k), detail::smooth_test_field(g, rng)});
    }
    battery.push_back({"disc", sample_cell_average(
                                   [](const Point& x) { return cplx{x[0] * x[0] + x[1] * x[1] < 1.0 ? 1.0 : 0.0, 0.0}; },
                                   g, cfg.subsamples)});

    // the disc indicator is not smooth: reported, not counted
    std::size_t violations = 0;
    std::size_t evaluated = 0;
    double disc_ratio = 0.0;
    std::string disc_where;
    double worst_ratio = 0.0;
    std::string worst_where;
    std::vector<Field> transforms;
    for (std::size_t k = 0; k < battery.size(); ++k) {
        const Field& f = battery[k].f;
        transforms.push_back(beurling(f, cfg.padding));
        const Field& bf = transforms.back();
        std::mt19937_64 rng(cfg.seed + 7919 + k);
        for (std::size_t idx : detail::sample_points(g, cfg.sample_radius, cfg.cotlar_points, rng)) {
            const double lhs = maximal_transform(f, KernelSpec::beurling(), ladder, idx);
            const double rhs = hl_maximal(bf, ladder, idx);
            const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInfinity : 0.0);
            const bool breach = lhs > (1.0 + cfg.tol_cotlar) * rhs;
            const bool smooth = k < cfg.cotlar_fields;
            const Point x = g.point(idx);
            double& worst = smooth ? worst_ratio : disc_ratio;
            if (ratio > worst) {
                worst = ratio;
                (smooth ? worst_where : disc_where) = fmt::format("{} at ({}, {})", battery[k].label, x[0], x[1]);
            }
            if (smooth) {
                violations += breach ? 1 : 0;
                ++evaluated;
            }
            csv.add_row({std::string(smooth ? "cotlar" : "cotlar_disc"), battery[k].label, detail::blank(), x[0], x[1], lhs, rhs, ratio, breach});
        }
    }
    detail::add_check(report, "cotlar_violations", violations == 0, static_cast<double>(violations), 0.0,
                      fmt::format("B*f <= (1 + {}) M(Bf) at {} points over {} smooth fields", cfg.tol_cotlar,
                                  evaluated, cfg.cotlar_fields));
    report.notes.push_back(fmt::format("largest B*f / M(Bf) = {} ({})", format_double(worst_ratio), worst_where));
    report.notes.push_back(fmt::format("chi_D (diagnostic, discontinuous): largest B*f / M(Bf) = {} ({})",
                                       format_double(disc_ratio), disc_where));

    double worst_disc = 0.0;
    std::string worst_disc_where;
    std::size_t disc_evaluated = 0;
    const std::size_t disc_fields = std::min(cfg.disc_fields, cfg.cotlar_fields);
    for (std::size_t k = 0; k < disc_fields; ++k) {
        const Field& f = battery[k].f;
        const Field& bf = transforms[k];
        for (std::size_t r = 0; r < cfg.disc_radii.size(); ++r) {
            const double eps = cfg.disc_radii[r];
            std::mt19937_64 rng(cfg.seed + 104729 + 31 * k + r);
            for (std::size_t idx : detail::sample_points(g, cfg.sample_radius, cfg.disc_points, rng)) {
                const cplx lhs = truncated_transform(f, KernelSpec::beurling(), eps, idx);
                const cplx rhs = disc_average(bf, idx, eps);
                const double res = std::abs(lhs - rhs);
                ++disc_evaluated;
                const Point x = g.point(idx);
                if (res > worst_disc) {
                    worst_disc = res;
                    worst_disc_where = fmt::format("{} eps {} at ({}, {})", battery[k].label, eps, x[0], x[1]);
                }
                csv.add_row({std::string("disc"), battery[k].label, eps, x[0], x[1], std::abs(lhs), std::abs(rhs), res,
                             res > cfg.tol_disc});
            }
        }
    }
    detail::add_check(report, "disc_identity", worst_disc <= cfg.tol_disc, worst_disc, cfg.tol_disc,
                      fmt::format("|B^eps f - mean of Bf on D(z, eps)| over {} samples, worst {}", disc_evaluated,
                                  worst_disc_where));
    out.csv(csv);
    return report;
}

}  // namespace sing
