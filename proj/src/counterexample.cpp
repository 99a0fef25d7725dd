#include "sing/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "sing/norms.hpp"
#include "sing/spectral.hpp"

namespace sing {

DipoleSource make_dipole_source(double eps, const GridSpec& spec) {
    if (!(eps > 0.0 && eps < 0.25)) throw ConfigError(fmt::format("mollifier width must lie in (0, 1/4) (got {})", eps));
    if (1.0 + eps > 0.5 * spec.half_width()) {
        throw ResolutionError(fmt::format("box half-width {} leaves less than L/2 around the bumps", spec.half_width()));
    }
    return {eps, spec};
}

Field build_f_eps(const DipoleSource& src) { return dipole_preimage(src.eps, src.spec); }

std::vector<WeightedPoint> adaptive_eval_points(const GridSpec& spec, double base_spacing, double min_side,
                                                const std::vector<Point>& hot_spots) {
    const int dim = spec.dim();
    const double L = spec.half_width();
    const double h = spec.spacing();
    const double per_axis = 2.0 * L / base_spacing;
    if (!(base_spacing > 0.0) || std::abs(per_axis - std::round(per_axis)) > 1e-9 * per_axis) {
        throw ConfigError(fmt::format("base spacing {} does not tile the box of half-width {}", base_spacing, L));
    }
    const double half_cells = 0.5 * base_spacing / h;
    if (std::abs(half_cells - std::round(half_cells)) > 1e-9 || half_cells < 0.5) {
        throw ConfigError(fmt::format("base spacing {} does not center cells on grid points (h = {})", base_spacing, h));
    }

    std::vector<WeightedPoint> out;
    const auto nearest_hot = [&](const Point& c) {
        double d = kInfinity;
        for (const auto& p : hot_spots) d = std::min(d, norm(c - p));
        return d;
    };
    const std::function<void(const Point&, double)> visit = [&](const Point& c, double side) {
        const double child = 0.5 * side;
        if (child >= min_side * (1.0 - 1e-12) && nearest_hot(c) < 2.0 * side) {
            const std::size_t corners = std::size_t{1} << dim;
            for (std::size_t m = 0; m < corners; ++m) {
                Point cc = c;
                for (int d = 0; d < dim; ++d) cc[d] += ((m >> d) & 1U ? 0.25 : -0.25) * side;
                visit(cc, child);
            }
            return;
        }
        const std::size_t idx = spec.nearest(c);
        if (norm(spec.point(idx) - c) > 1e-9 * h) {
            throw ConfigError(fmt::format("quadtree cell of side {} is not centered on a grid point", side));
        }
        out.push_back({idx, std::pow(side, dim)});
    };

    const auto n = static_cast<std::size_t>(std::llround(per_axis));
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;
    for (std::size_t lin = 0; lin < total; ++lin) {
        Point c{0.0, 0.0, 0.0};
        std::size_t r = lin;
        for (int d = dim - 1; d >= 0; --d) {
            c[d] = -L + base_spacing * (static_cast<double>(r % n) + 0.5);
            r /= n;
        }
        visit(c, base_spacing);
    }
    return out;
}

GridSpec sweep_grid(double eps, const SweepOptions& options) {
    const double h = eps / options.cells_per_eps;
    const double n = 2.0 * options.half_width / h;
    const auto points = static_cast<std::size_t>(std::llround(n));
    if (std::abs(n - static_cast<double>(points)) > 1e-9 * n) {
        throw ConfigError(fmt::format("eps = {} gives a non-integer point count {}", eps, n));
    }
    if (points > options.max_points) {
        throw ResolutionError(fmt::format("eps = {} needs {} points per axis (cap {})", eps, points, options.max_points));
    }
    return make_grid(options.dim, options.half_width, points);
}

namespace {

double parity_defect(const Field& f) {
    const GridSpec& g = f.spec();
    const std::size_t n = g.points_per_axis();
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        MultiIndex idx = g.unravel(i);
        scale = std::max(scale, std::abs(f[i]));
        if (idx[0] == 0) continue;  // -L has no mirror inside the box
        idx[0] = n - idx[0];
        worst = std::max(worst, std::abs(f[i] - f[g.ravel(idx)]));
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

SweepRecord sweep_entry(double eps, const SweepOptions& options) {
    SweepRecord rec;
    rec.eps = eps;
    rec.lambda_count = options.lambda_count;
    rec.lambda_min = options.lambda_min;

    const GridSpec g = sweep_grid(eps, options);
    rec.points_per_axis = g.points_per_axis();
    rec.half_width = g.half_width();
    rec.spacing = g.spacing();

    const DipoleSource src = make_dipole_source(eps, g);
    const Field f = build_f_eps(src);
    rec.l1_of_R1f = lp_norm(riesz(f, 1), 1.0);
    rec.integral_f = std::abs(integral(f));
    rec.parity_defect = parity_defect(f);

    const auto points = adaptive_eval_points(g, options.base_spacing, 2.0 * g.spacing(), {src.a(), src.b()});
    const TruncationLadder base =
        TruncationLadder::geometric(options.ladder_eps0, options.ladder_ratio, options.ladder_count).restricted_to(g);
    rec.ladder_size = base.size();

    std::vector<double> values(points.size());
    std::vector<double> weights(points.size());
    const KernelSpec r1 = KernelSpec::riesz(1);
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Point x = g.point(points[k].index);
        // radii reaching exactly to the bump centers, where the proof's truncations sit
        const TruncationLadder lad =
            base.merged(TruncationLadder::from_radii({norm(x - src.a()), norm(x - src.b())})).restricted_to(g);
        values[k] = maximal_transform(f, r1, lad, points[k].index);
        weights[k] = points[k].weight;
        rec.covered_measure += weights[k];
    }
    rec.eval_points = points.size();
    rec.max_R1star = *std::max_element(values.begin(), values.end());
    rec.lambda_max = rec.max_R1star;

    const auto lambdas = log_lambda_grid(options.lambda_min, std::max(options.lambda_min, rec.max_R1star),
                                         options.lambda_count);
    for (const auto& d : distribution(values, weights, lambdas)) {
        const double v = d.lambda * d.superlevel_measure;
        if (v > rec.weak_quasinorm_of_R1star) {
            rec.weak_quasinorm_of_R1star = v;
            rec.argmax_lambda = d.lambda;
        }
    }
    return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepOptions& options) {
    if (options.eps_list.empty()) throw ConfigError("empty eps list");
    std::vector<SweepRecord> out;
    for (double eps : options.eps_list) {
        try {
            out.push_back(sweep_entry(eps, options));
        } catch (const ResolutionError& e) {
            SweepRecord rec;
            rec.eps = eps;
            rec.skipped = e.what();
            out.push_back(rec);
        }
    }
    return out;
}

LogFit fit_log_growth(const std::vector<SweepRecord>& records) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : records) {
        if (!r.skipped.empty()) continue;
        xs.push_back(std::log(1.0 / r.eps));
        ys.push_back(r.weak_quasinorm_of_R1star);
    }
    const std::size_t m = xs.size();
    if (m < 4) throw Error(fmt::format("log-growth fit needs at least 4 usable records (got {})", m));
    double xm = 0.0;
    double ym = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        xm += xs[k];
        ym += ys[k];
    }
    xm /= static_cast<double>(m);
    ym /= static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        sxx += (xs[k] - xm) * (xs[k] - xm);
        sxy += (xs[k] - xm) * (ys[k] - ym);
        syy += (ys[k] - ym) * (ys[k] - ym);
    }
    if (sxx <= 0.0) throw Error("log-growth fit: all records share one eps");
    if (syy <= 1e-300) throw Error("log-growth fit: constant response, r^2 undefined");
    LogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    fit.r2 = sxy * sxy / (sxx * syy);
    fit.used = m;
    return fit;
}

AxisCheckResult run_axis_check(const AxisCheckOptions& options) {
    AxisCheckResult out;
    SweepOptions grid_opts;
    grid_opts.half_width = options.half_width;
    grid_opts.cells_per_eps = options.cells_per_eps;
    grid_opts.max_points = options.max_points;
    grid_opts.dim = options.dim;

    for (double eps : options.eps_list) {
        GridSpec g;
        try {
            g = sweep_grid(eps, grid_opts);
        } catch (const ResolutionError&) {
            out.skipped_eps.push_back(eps);
            continue;
        }
        const DipoleSource src = make_dipole_source(eps, g);
        const Field f = build_f_eps(src);
        double c_max = 0.0;
        for (double delta : options.deltas) {
            AxisSample s;
            s.eps = eps;
            s.delta = delta;
            s.x1 = src.b()[0] + delta;
            if (s.x1 >= g.half_width()) {
                throw ConfigError(fmt::format("axis point x1 = {} lies outside the box", s.x1));
            }
            const std::size_t idx = g.nearest({s.x1, 0.0, 0.0});
            s.value = std::abs(truncated_transform(f, KernelSpec::riesz(1), delta, idx));
            s.c_needed = std::pow(delta, -options.dim) * std::log(1.0 / eps) / s.value;
            s.in_eta_window = delta >= 4.0 && delta <= std::pow(eps, -options.eta);
            c_max = std::max(c_max, s.c_needed);
            if (s.in_eta_window) {
                ++out.window_samples;
                out.window_c = std::max(out.window_c.value_or(0.0), s.c_needed);
            }
            out.samples.push_back(s);
        }
        out.fitted_eps.push_back(eps);
        out.c_fit.push_back(c_max);
    }
    return out;
}

}  // namespace sing
