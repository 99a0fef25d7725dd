#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sing/potentials.hpp"
#include "sing/spectral.hpp"

using namespace sing;

namespace {

// closed forms: circle 4 K(k) / (1 + r), k = 2 sqrt(r) / (1 + r); sphere (2 pi / r) log|(1 + r) / (1 - r)|
double circle_exact(double r) { return 4.0 * std::comp_ellint_1(2.0 * std::sqrt(r) / (1.0 + r)) / (1.0 + r); }
double sphere_exact(double r) { return 2.0 * std::numbers::pi / r * std::log(std::abs((1.0 + r) / (1.0 - r))); }

}  // namespace

TEST_CASE("sphere potential at the center") {
    CHECK(p_eval({0.0, 0.0, 0.0}, {2, 64}) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(p_eval({0.0, 0.0, 0.0}, {3, 64}) == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("sphere potential against closed forms") {
    for (double r : {0.3, 0.9, 0.99, 0.999, 1.001, 1.1, 2.5}) {
        CAPTURE(r);
        CHECK(p_eval({r, 0.0, 0.0}, {2, 0}) == doctest::Approx(circle_exact(r)).epsilon(1e-3).scale(0));
        CHECK(p_eval({0.0, 0.0, r}, {3, 0}) == doctest::Approx(sphere_exact(r)).epsilon(1e-2).scale(0));
    }
}

TEST_CASE("sphere potential is rotation invariant") {
    const double r = 1.05;
    const double ref = p_eval({r, 0.0, 0.0}, {2, 0});
    for (double t : {0.3, 1.0, 2.2, 4.0}) {
        CHECK(p_eval({r * std::cos(t), r * std::sin(t), 0.0}, {2, 0}) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("sphere potential grows like a log near the sphere") {
    double prev = 0.0;
    for (double d : {0.4, 0.1, 1e-2, 1e-3, 1e-4}) {
        const double p = p_eval({1.0 + d, 0.0, 0.0}, {2, 0});
        CHECK(p > prev);
        prev = p;
        const double ratio = p / std::log(1.0 / d);
        CHECK(ratio > 1.0);
        CHECK(ratio < 10.0);
    }
}

TEST_CASE("sphere potential rejects unresolved points") {
    CHECK_THROWS_AS(p_eval({1.0, 0.0, 0.0}, {2, 0}), Error);
    CHECK_THROWS_AS(p_eval({1.01, 0.0, 0.0}, {2, 64}), Error);
    CHECK_THROWS_AS(p_eval({0.5, 0.0, 0.0}, {4, 64}), ConfigError);
}

TEST_CASE("h satisfies its defining identity away from the sphere") {
    const GridSpec g = make_grid(2, 8.0, 256);
    const Field h = h_field(g);
    const Field g1 = exterior_kernel(g, 1, 8);
    const Field r1h = riesz(h, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (sphere_distance(g.point(i)) < 2.0 * g.spacing()) continue;
        worst = std::max(worst, std::abs(r1h[i] - g1[i]));
    }
    CHECK(worst < 0.05);
}

TEST_CASE("h is invariant under grid rotations") {
    const GridSpec g = make_grid(2, 8.0, 128);
    const Field h = h_field(g);
    double worst = 0.0;
    double scale = 0.0;
    // quarter turn about the origin maps (i, j) to (n - j, i); the lone Nyquist
    // row breaks the symmetry near the box edge, so only |x| <= L/2 is compared
    const std::size_t n = g.points_per_axis();
    for (std::size_t a = 1; a < n; ++a) {
        for (std::size_t b = 1; b < n; ++b) {
            const Point x = g.point(g.ravel({a, b, 0}));
            if (sphere_distance(x) < 2.0 * g.spacing() || norm(x) > 0.5 * g.half_width()) continue;
            const double v = h[g.ravel({a, b, 0})].real();
            const double w = h[g.ravel({n - b, a, 0})].real();
            worst = std::max(worst, std::abs(v - w));
            scale = std::max(scale, std::abs(v));
        }
    }
    CHECK(worst < 1e-3 * scale);
}

TEST_CASE("h rejects small boxes and unsupported dims") {
    CHECK_THROWS_AS(h_field(make_grid(2, 4.0, 64)), ResolutionError);
    CHECK_THROWS_AS(h_field(make_grid(1, 64.0, 64)), ConfigError);
}

TEST_CASE("c0 fit recovers a synthetic decomposition") {
    const GridSpec g = make_grid(2, 4.0, 128);
    const Field synth = sample([](const Point& x) {
        const double d = sphere_distance(x);
        if (d < 1e-12) return cplx{0.0, 0.0};
        return cplx{0.03 * p_eval(x, {2, 0}) + 0.05 + 0.02 * x[0], 0.0};
    }, g);
    const C0Fit fit = fit_c0_and_bound_b(synth);
    CHECK(fit.c0 == doctest::Approx(0.03).epsilon(1e-9).scale(0));
    CHECK(fit.intercept == doctest::Approx(0.05).epsilon(1e-6).scale(0));
    CHECK(fit.b_sup == doctest::Approx(0.075).epsilon(0.01).scale(0));
    CHECK_THROWS_AS(fit_c0_and_bound_b(synth, 0.3, 0.1), ConfigError);
}
