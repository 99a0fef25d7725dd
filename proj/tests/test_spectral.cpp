#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sing/norms.hpp"
#include "sing/quadrature.hpp"
#include "sing/spectral.hpp"

using namespace sing;

namespace {

double analytic_gamma(int n) {
    // pi^((n+1)/2) / Gamma((n+1)/2)
    const double a = (n + 1) / 2.0;
    return std::pow(std::numbers::pi, a) / std::tgamma(a);
}

cplx gauss2(const Point& x, double cx, double cy, double s) {
    const double dx = x[0] - cx;
    const double dy = x[1] - cy;
    return {std::exp(-(dx * dx + dy * dy) / (s * s)), 0.0};
}

Field random_bumps(const GridSpec& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_real_distribution<double> s(0.3, 0.8);
    Field f(g);
    for (int k = 0; k < 3; ++k) {
        const double cx = u(rng), cy = u(rng), sg = s(rng);
        const cplx amp{u(rng), u(rng)};
        f += amp * sample([=](const Point& x) { return gauss2(x, cx, cy, sg); }, g);
    }
    return f;
}

double max_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Field remove_mean(Field f) {
    cplx mean{0.0, 0.0};
    for (const auto& v : f.values()) mean += v;
    mean /= static_cast<double>(f.size());
    for (auto& v : f.mutable_values()) v -= mean;
    return f;
}

}  // namespace

TEST_CASE("calibrated Riesz constants match the closed form") {
    for (int n = 1; n <= 3; ++n) {
        const RieszCalibration c = run_riesz_calibration(n);
        CAPTURE(n);
        CHECK(c.relative_residual < 1e-3);
        CHECK(c.gamma == doctest::Approx(analytic_gamma(n)).epsilon(1e-3).scale(0));
        CHECK(calibrate_riesz_constant(n) == c.gamma);
    }
}

TEST_CASE("multiplier values") {
    const std::vector<double> xi{3.0, 4.0};
    const cplx r1 = multiplier({2, MultiplierKind::riesz, 1, 2.0}, xi);
    CHECK(r1.real() == 0.0);
    CHECK(r1.imag() == doctest::Approx(-1.2));
    const cplx b = multiplier({2, MultiplierKind::beurling, 1, 1.0}, xi);
    const cplx bi = multiplier({2, MultiplierKind::inverse_beurling, 1, 1.0}, xi);
    CHECK(std::abs(b) == doctest::Approx(1.0));
    CHECK(std::abs(b * bi - 1.0) < 1e-15);
    const std::vector<double> zero{0.0, 0.0};
    CHECK(multiplier({2, MultiplierKind::beurling, 1, 1.0}, zero) == cplx{0.0, 0.0});
}

TEST_CASE("sum of squared Riesz transforms is minus gamma squared") {
    std::mt19937_64 rng(11);
    const GridSpec g = make_grid(2, 4.0, 64);
    const double gamma = calibrate_riesz_constant(2);
    const Field f = remove_mean(random_bumps(g, rng));
    Field acc(g);
    for (int j = 1; j <= 2; ++j) acc += riesz(riesz(f, j), j);
    const Field expected = cplx{-gamma * gamma, 0.0} * f;
    CHECK(max_diff(acc, expected) / lp_norm(expected, kInfinity) < 1e-6);
}

TEST_CASE("Riesz transforms are linear") {
    std::mt19937_64 rng(3);
    const GridSpec g = make_grid(2, 4.0, 64);
    const Field f = random_bumps(g, rng);
    const Field k = random_bumps(g, rng);
    const cplx a{0.3, -1.1};
    const Field lhs = riesz(a * f + k, 2);
    const Field rhs = a * riesz(f, 2) + riesz(k, 2);
    CHECK(max_diff(lhs, rhs) < 1e-12 * lp_norm(rhs, kInfinity) + 1e-14);
}

TEST_CASE("Beurling transform is an L2 isometry inverted by its adjoint") {
    std::mt19937_64 rng(5);
    const GridSpec g = make_grid(2, 4.0, 64);
    const Field f = remove_mean(random_bumps(g, rng));
    const Field bf = beurling(f);
    CHECK(lp_norm(bf, 2.0) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12).scale(0));
    CHECK(max_diff(inverse_beurling(bf), f) < 1e-12 * lp_norm(f, kInfinity));
}

TEST_CASE("Beurling transform of the unit disc") {
    // B(chi_D)(z) = 1/z^2 outside the disc
    const GridSpec g = make_grid(2, 8.0, 512);
    auto disc = [](const Point& x) { return cplx{x[0] * x[0] + x[1] * x[1] < 1.0 ? 1.0 : 0.0, 0.0}; };
    const Field b = beurling(sample_cell_average(disc, g, 8), 2);
    CHECK(std::abs(b.evaluate({2.0, 0.0, 0.0}) - 0.25) < 0.03);
    CHECK(std::abs(b.evaluate({1.5, 1.5, 0.0}) - 1.0 / (cplx{1.5, 1.5} * cplx{1.5, 1.5})) < 0.03);
}

TEST_CASE("Hilbert transform of a cosine is the sine") {
    const GridSpec g = make_grid(1, std::numbers::pi, 64);
    const Field c = sample([](const Point& x) { return cplx{std::cos(3.0 * x[0]), 0.0}; }, g);
    const Field s = sample([](const Point& x) { return cplx{std::sin(3.0 * x[0]), 0.0}; }, g);
    CHECK(max_diff(hilbert(c), s) < 1e-13);
    CHECK_THROWS_AS(hilbert(Field(make_grid(2, 1.0, 8))), ConfigError);
}

TEST_CASE("complex derivatives of a gaussian") {
    // dbar exp(-|z|^2) = -z exp(-|z|^2), d exp(-|z|^2) = -conj(z) exp(-|z|^2)
    const GridSpec g = make_grid(2, 8.0, 128);
    const Field f = sample([](const Point& x) { return gauss2(x, 0.0, 0.0, 1.0); }, g);
    const Field fz = sample([](const Point& x) { return -cplx{x[0], x[1]} * gauss2(x, 0.0, 0.0, 1.0); }, g);
    const Field fzc = sample([](const Point& x) { return -cplx{x[0], -x[1]} * gauss2(x, 0.0, 0.0, 1.0); }, g);
    CHECK(max_diff(d_zbar(f), fz) < 1e-10);
    CHECK(max_diff(d_z(f), fzc) < 1e-10);
}

TEST_CASE("Beurling maps dbar to minus d") {
    // with kernel +1/(pi w^2), B(dbar u) = -d u for compactly supported u
    const GridSpec g = make_grid(2, 8.0, 128);
    const Field u = sample([](const Point& x) { return gauss2(x, 0.5, -0.25, 0.7); }, g);
    CHECK(max_diff(beurling(d_zbar(u)) + d_z(u), Field(g)) < 1e-10);
}

TEST_CASE("padding keeps compactly supported results") {
    const GridSpec g = make_grid(2, 8.0, 128);
    const Field u = sample([](const Point& x) { return gauss2(x, 0.0, 0.0, 0.7); }, g);
    CHECK(max_diff(beurling(d_zbar(u), 2) + d_z(u), Field(g)) < 1e-10);
    CHECK_THROWS_AS(beurling(u, 0), ConfigError);
}

TEST_CASE("mollifier has unit mass") {
    for (int n = 1; n <= 3; ++n) {
        const GridSpec g = make_grid(n, 0.5, n == 3 ? 64 : 256);
        const Field phi = sample([n](const Point& x) { return cplx{mollifier(x, 0.25, n), 0.0}; }, g);
        CAPTURE(n);
        CHECK(integral(phi).real() == doctest::Approx(1.0).epsilon(1e-3).scale(0));
    }
    CHECK(mollifier_constant(1) == doctest::Approx(15.0 / 16.0));
    CHECK(mollifier_constant(2) == doctest::Approx(3.0 / std::numbers::pi));
    CHECK(mollifier_constant(3) == doctest::Approx(105.0 / (32.0 * std::numbers::pi)));
    CHECK(mollifier({0.25, 0.0, 0.0}, 0.25, 2) == 0.0);
}

TEST_CASE("dipole preimage inverts the first Riesz transform") {
    for (int n = 1; n <= 2; ++n) {
        const double eps = 0.125;
        const GridSpec g = make_grid(n, 4.0, 256);
        const Field f = dipole_preimage(eps, g);
        const Field target = mollified_dipole(eps, g);
        CAPTURE(n);
        CHECK(max_diff(riesz(f, 1), target) < 1e-9 * lp_norm(target, kInfinity));
        const double scale = lp_norm(f, kInfinity);
        double worst_imag = 0.0;
        for (const auto& v : f.values()) worst_imag = std::max(worst_imag, std::abs(v.imag()));
        CHECK(worst_imag < 1e-9 * scale);
    }
}

TEST_CASE("dipole preimage validates its grid") {
    CHECK_THROWS_AS(dipole_preimage(0.125, make_grid(2, 4.0, 128)), ResolutionError);  // 4 cells across
    CHECK_THROWS_AS(dipole_preimage(0.3, make_grid(2, 4.0, 256)), ConfigError);
    CHECK_THROWS_AS(dipole_preimage(0.125, make_grid(2, 1.0, 64)), ResolutionError);
    CHECK_THROWS_AS(dipole_preimage(0.125, make_grid(2, 3.9, 250)), ResolutionError);
}
