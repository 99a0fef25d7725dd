#include "sing/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sing/spectral.hpp"

namespace sing {

double sphere_distance(const Point& x) { return std::abs(norm(x) - 1.0); }

std::size_t default_sphere_nodes(double d) {
    if (!(d > 0.0)) throw Error("point lies on the unit sphere");
    return std::max<std::size_t>(64, static_cast<std::size_t>(std::ceil(16.0 / d)));
}

namespace {

double circle_potential(double r, std::size_t q) {
    // trapezoid over the circle; x placed on the positive axis by symmetry
    const double step = 2.0 * std::numbers::pi / static_cast<double>(q);
    double acc = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
        const double t = step * static_cast<double>(k);
        acc += 1.0 / std::sqrt(r * r - 2.0 * r * std::cos(t) + 1.0);
    }
    return acc * step;
}

double sphere_potential(double r, std::size_t q) {
    // polar midpoint rule, weights 2 pi sin(theta) dtheta rescaled to total 4 pi
    const double step = std::numbers::pi / static_cast<double>(q);
    double acc = 0.0;
    double mass = 0.0;
    for (std::size_t k = 0; k < q; ++k) {
        const double t = step * (static_cast<double>(k) + 0.5);
        const double w = std::sin(t);
        mass += w;
        acc += w / (r * r - 2.0 * r * std::cos(t) + 1.0);
    }
    return 4.0 * std::numbers::pi * acc / mass;
}

}  // namespace

double p_eval(const Point& x, const SpherePotentialSpec& spec) {
    if (spec.dim != 2 && spec.dim != 3) throw ConfigError(fmt::format("sphere potential needs dim 2 or 3 (got {})", spec.dim));
    const double d = sphere_distance(x);
    if (!(d > 0.0)) throw Error(fmt::format("p is singular on the unit sphere (|x| = {})", norm(x)));
    const std::size_t q = spec.quadrature_nodes ? spec.quadrature_nodes : default_sphere_nodes(d);
    const double spacing = (spec.dim == 2 ? 2.0 : 1.0) * std::numbers::pi / static_cast<double>(q);
    if (spacing > 0.5 * d) {
        throw Error(fmt::format("{} sphere nodes are too coarse at distance {} from the sphere; use at least {}", q, d,
                                default_sphere_nodes(d)));
    }
    const double r = norm(x);
    return spec.dim == 2 ? circle_potential(r, q) : sphere_potential(r, q);
}

Field exterior_kernel(const GridSpec& spec, int j, int subsamples) {
    const int dim = spec.dim();
    if (j < 1 || j > dim) throw ConfigError(fmt::format("kernel axis {} outside 1..{}", j, dim));
    return sample_cell_average(
        [dim, j](const Point& x) {
            const double r = norm(x);
            if (r <= 1.0) return cplx{0.0, 0.0};
            return cplx{x[j - 1] / std::pow(r, dim + 1), 0.0};
        },
        spec, subsamples);
}

Field h_field(const GridSpec& spec, const HFieldOptions& options) {
    const int dim = spec.dim();
    if (dim != 2 && dim != 3) throw ConfigError(fmt::format("h is built in dim 2 or 3 (got {})", dim));
    const double boundary = std::pow(spec.half_width(), -dim);
    if (boundary > options.boundary_tolerance) {
        throw ResolutionError(fmt::format("box half-width {} leaves the kernel at {} on the boundary (limit {})",
                                          spec.half_width(), boundary, options.boundary_tolerance));
    }
    const double gamma = calibrate_riesz_constant(dim);
    Field h(spec);
    for (int i = 1; i <= dim; ++i) h += riesz(exterior_kernel(spec, i, options.subsamples), i, options.padding);
    h *= cplx{-1.0 / (gamma * gamma), 0.0};
    return h;
}

C0Fit fit_c0_and_bound_b(const Field& h, double d_lo, double d_hi) {
    const GridSpec& g = h.spec();
    if (!(d_lo > 0.0) || !(d_hi > d_lo)) throw ConfigError(fmt::format("bad fit window [{}, {}]", d_lo, d_hi));
    const SpherePotentialSpec ps{g.dim(), 0};

    std::vector<double> pv;
    std::vector<double> hv;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Point x = g.point(i);
        const double d = sphere_distance(x);
        if (d < d_lo || d > d_hi) continue;
        pv.push_back(p_eval(x, ps));
        hv.push_back(h[i].real());
    }
    const std::size_t m = pv.size();
    if (m < 3) throw Error(fmt::format("only {} grid points in the fit window", m));

    double pm = 0.0;
    double hm = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        pm += pv[k];
        hm += hv[k];
    }
    pm /= static_cast<double>(m);
    hm /= static_cast<double>(m);
    double spp = 0.0;
    double sph = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        spp += (pv[k] - pm) * (pv[k] - pm);
        sph += (pv[k] - pm) * (hv[k] - hm);
    }
    if (spp <= 1e-10 * pm * pm * static_cast<double>(m)) {
        throw Error("p is nearly constant on the fit window; the c0 fit is ill-conditioned");
    }

    C0Fit fit;
    fit.c0 = sph / spp;
    fit.intercept = hm - fit.c0 * pm;
    fit.points = m;
    double ss = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double b = hv[k] - fit.c0 * pv[k];
        fit.b_sup = std::max(fit.b_sup, std::abs(b));
        fit.h_sup = std::max(fit.h_sup, std::abs(hv[k]));
        const double res = b - fit.intercept;
        ss += res * res;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(m));
    return fit;
}

C0Fit fit_c0_and_bound_b(const Field& h) { return fit_c0_and_bound_b(h, 2.0 * h.spec().spacing(), 0.3); }

}  // namespace sing
