#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sing/quadrature.hpp"
#include "sing/spectral.hpp"

using namespace sing;

namespace {

cplx gauss(const Point& x) { return {std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])), 0.0}; }

}  // namespace

TEST_CASE("ladder construction") {
    const auto lad = TruncationLadder::geometric(0.5, 2.0, 4);
    CHECK(lad.size() == 4);
    CHECK(lad.largest() == doctest::Approx(4.0));
    const auto m = lad.merged(TruncationLadder::from_radii({3.0, 1.0, 0.5}));
    CHECK(m.size() == 5);
    for (std::size_t k = 1; k < m.size(); ++k) CHECK(m.radii()[k] > m.radii()[k - 1]);
    const GridSpec g = make_grid(2, 4.0, 8);  // diameter sqrt(2)
    CHECK(lad.restricted_to(g).smallest() == doctest::Approx(2.0));
}

TEST_CASE("kernel values") {
    CHECK(kernel_value(KernelSpec::riesz(1), {2.0, 0.0, 0.0}, 2).real() == doctest::Approx(0.25));
    CHECK(kernel_value(KernelSpec::riesz(2), {0.0, -2.0, 0.0}, 3).real() == doctest::Approx(-0.125));
    CHECK(kernel_value(KernelSpec::beurling(), {0.0, 1.0, 0.0}, 2).real() == doctest::Approx(-1.0 / std::numbers::pi));
    CHECK(kernel_value(KernelSpec::cauchy(), {0.0, 0.0, 0.0}, 2) == cplx{0.0, 0.0});
}

TEST_CASE("profile agrees with brute-force sums") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    for (int dim = 1; dim <= 3; ++dim) {
        const GridSpec g = make_grid(dim, 2.0, dim == 3 ? 16 : 32);
        Field f(g);
        for (auto& v : f.mutable_values()) v = {normal(rng), normal(rng)};
        const auto lad = TruncationLadder::geometric(g.cell_diameter(), 1.3, 8);
        const std::size_t x = g.ravel({3, 5, 7});
        const std::vector<KernelSpec> kernels =
            dim == 2 ? std::vector<KernelSpec>{KernelSpec::riesz(1), KernelSpec::riesz(2), KernelSpec::beurling(),
                                               KernelSpec::cauchy()}
                     : std::vector<KernelSpec>{KernelSpec::riesz(1), KernelSpec::riesz(dim)};
        for (const auto& k : kernels) {
            const auto prof = truncated_profile(f, k, lad, x);
            for (std::size_t r = 0; r < lad.size(); ++r) {
                cplx brute{0.0, 0.0};
                const double eps = lad.radii()[r];
                for (std::size_t w = 0; w < g.size(); ++w) {
                    const Point y = g.point(x) - g.point(w);
                    if (norm(y) > eps * (1.0 + 1e-12)) brute += f[w] * kernel_value(k, y, dim) * g.cell_volume();
                }
                CAPTURE(dim);
                CAPTURE(eps);
                CHECK(std::abs(prof[r] - brute) < 1e-10 * (1.0 + std::abs(brute)));
                CHECK(truncated_transform(f, k, eps, x) == prof[r]);
            }
        }
    }
}

TEST_CASE("values do not depend on the rest of the ladder") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    const GridSpec g = make_grid(2, 4.0, 64);
    Field f(g);
    for (auto& v : f.mutable_values()) v = {normal(rng), normal(rng)};
    const auto coarse = TruncationLadder::geometric(0.25, 1.5, 6);
    const auto fine = coarse.merged(TruncationLadder::geometric(0.2, 1.17, 14));
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    for (int p = 0; p < 40; ++p) {
        const std::size_t x = pick(rng);
        const auto a = truncated_profile(f, KernelSpec::beurling(), coarse, x);
        const auto b = truncated_profile(f, KernelSpec::beurling(), fine, x);
        for (std::size_t r = 0; r < coarse.size(); ++r) {
            const auto it = std::find(fine.radii().begin(), fine.radii().end(), coarse.radii()[r]);
            CHECK(a[r] == b[static_cast<std::size_t>(it - fine.radii().begin())]);
        }
        CHECK(maximal_transform(f, KernelSpec::beurling(), fine, x) >=
              maximal_transform(f, KernelSpec::beurling(), coarse, x));
    }
}

TEST_CASE("cells on the truncation sphere are excluded") {
    const GridSpec g = make_grid(1, 2.0, 16);
    Field f(g);
    const std::size_t x = g.origin_index();
    f[x + 2] = 1.0;  // at distance exactly 2h
    const double h = g.spacing();
    CHECK(truncated_transform(f, KernelSpec::riesz(1), 2.0 * h, x) == cplx{0.0, 0.0});
    CHECK(std::abs(truncated_transform(f, KernelSpec::riesz(1), 1.5 * h, x)) > 0.0);
}

TEST_CASE("odd kernels annihilate constants at the center") {
    const GridSpec g = make_grid(2, 2.0, 32);
    const Field one = sample([](const Point&) { return cplx{1.0, 0.0}; }, g);
    // the box is not symmetric about the origin (one extra row at -L), so use an interior ball
    const auto lad = TruncationLadder::from_radii({0.2, 0.5});
    const std::size_t o = g.origin_index();
    const auto prof = truncated_profile(one, KernelSpec::riesz(2), lad, o);
    CHECK(std::abs(prof[0] - prof[1]) < 1e-12);
}

TEST_CASE("principal value converges at first order to the calibrated multiplier") {
    double err[2];
    double pv[2];
    double exact = 0.0;
    for (int level = 0; level < 2; ++level) {
        const GridSpec g = make_grid(2, 16.0, 512u << level);
        const Field f = sample(gauss, g);
        const std::size_t x = g.nearest({0.5, 0.25, 0.0});
        exact = riesz(f, 1)[x].real();
        pv[level] = principal_value(f, KernelSpec::riesz(1), x).real();
        err[level] = std::abs(pv[level] - exact);
    }
    CHECK(err[0] / err[1] == doctest::Approx(2.0).epsilon(0.15).scale(0));
    CHECK(2.0 * pv[1] - pv[0] == doctest::Approx(exact).epsilon(1e-3).scale(0));
}

TEST_CASE("Cauchy transform inverts dbar") {
    const GridSpec g = make_grid(2, 8.0, 256);
    const Field u = sample(gauss, g);
    const Field du = d_zbar(u);
    for (const Point p : {Point{0.5, 0.25, 0.0}, Point{-1.0, 0.75, 0.0}}) {
        const std::size_t x = g.nearest(p);
        CHECK(std::abs(cauchy_transform(du, x) - u[x]) < 1e-2);
    }
}

TEST_CASE("ball averages of a constant and lattice counts") {
    const GridSpec g = make_grid(2, 2.0, 32);
    const Field c = sample([](const Point&) { return cplx{2.0, -1.0}; }, g);
    const double h = g.spacing();
    const auto lad = TruncationLadder::from_radii({std::sqrt(2.0) * h, 2.0 * h});
    const auto avg = ball_averages(c, lad, g.origin_index());
    CHECK(avg.counts[0] == 9);
    CHECK(avg.counts[1] == 13);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(std::abs(avg.mean[k] - cplx{2.0, -1.0}) < 1e-14);
        CHECK(avg.mean_abs[k] == doctest::Approx(std::sqrt(5.0)));
    }
}

TEST_CASE("maximal function of an indicator") {
    const GridSpec g = make_grid(1, 4.0, 64);
    const Field chi = sample([](const Point& x) { return cplx{std::abs(x[0]) <= 0.5 ? 1.0 : 0.0, 0.0}; }, g);
    const auto lad = TruncationLadder::geometric(g.spacing(), 1.2, 20);
    CHECK(hl_maximal(chi, lad, g.origin_index()) == doctest::Approx(1.0));
    // far away the best ball just reaches the interval
    const double far = hl_maximal(chi, lad, g.nearest({3.0, 0.0, 0.0}));
    CHECK(far > 0.0);
    CHECK(far < 0.3);
}

TEST_CASE("disc average of a linear function") {
    const GridSpec g = make_grid(2, 2.0, 64);
    const Field lin = sample([](const Point& x) { return cplx{x[0], x[1]}; }, g);
    const std::size_t z = g.nearest({0.5, -0.5, 0.0});
    CHECK(std::abs(disc_average(lin, z, 0.3) - cplx{0.5, -0.5}) < 1e-12);
    CHECK_THROWS_AS(disc_average(Field(make_grid(1, 1.0, 8)), 0, 0.5), ConfigError);
}

TEST_CASE("unresolved radii are rejected") {
    const GridSpec g = make_grid(2, 2.0, 32);
    const Field f(g);
    CHECK_THROWS_AS(truncated_transform(f, KernelSpec::riesz(1), 0.5 * g.spacing(), 0), ResolutionError);
    CHECK_THROWS_AS(truncated_transform(f, KernelSpec::riesz(3), 1.0, 0), ConfigError);
    CHECK_THROWS_AS(truncated_transform(Field(make_grid(3, 1.0, 8)), KernelSpec::beurling(), 1.0, 0), ConfigError);
}
