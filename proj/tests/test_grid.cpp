#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sing/grid.hpp"

using namespace sing;

TEST_CASE("grid coordinates and origin") {
    const GridSpec g = make_grid(2, 4.0, 16);
    CHECK(g.spacing() == doctest::Approx(0.5));
    CHECK(g.coordinate(0) == doctest::Approx(-4.0));
    CHECK(g.coordinate(8) == 0.0);
    const Point o = g.point(g.origin_index());
    CHECK(o[0] == 0.0);
    CHECK(o[1] == 0.0);
    CHECK(g.size() == 256);
    CHECK(g.cell_volume() == doctest::Approx(0.25));
    CHECK(g.cell_diameter() == doctest::Approx(std::sqrt(0.5)));
    CHECK(g.box_volume() == doctest::Approx(64.0));
}

TEST_CASE("ravel and unravel are inverse") {
    for (int dim = 1; dim <= 3; ++dim) {
        const GridSpec g = make_grid(dim, 1.0, 8);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.ravel(g.unravel(i)) == i);
    }
}

TEST_CASE("last axis is fastest") {
    const GridSpec g = make_grid(2, 1.0, 8);
    const Point p0 = g.point(0);
    const Point p1 = g.point(1);
    CHECK(p0[0] == p1[0]);
    CHECK(p1[1] - p0[1] == doctest::Approx(g.spacing()));
}

TEST_CASE("nearest clamps to the box") {
    const GridSpec g = make_grid(2, 1.0, 8);
    CHECK(g.nearest({0.0, 0.0, 0.0}) == g.origin_index());
    CHECK(g.nearest({-100.0, -100.0, 0.0}) == 0);
    CHECK(g.nearest({0.26, -0.24, 0.0}) == g.ravel({5, 3, 0}));
}

TEST_CASE("make_grid rejects bad arguments") {
    CHECK_THROWS_AS(make_grid(0, 1.0, 8), ConfigError);
    CHECK_THROWS_AS(make_grid(4, 1.0, 8), ConfigError);
    CHECK_THROWS_AS(make_grid(2, 0.0, 8), ConfigError);
    CHECK_THROWS_AS(make_grid(2, 1.0, 9), ConfigError);
    CHECK_THROWS_AS(make_grid(2, 1.0, 6), ConfigError);
}

TEST_CASE("midpoint integral of a gaussian") {
    const GridSpec g = make_grid(2, 6.0, 128);
    const Field f = sample([](const Point& x) { return cplx{std::exp(-(x[0] * x[0] + x[1] * x[1])), 0.0}; }, g);
    CHECK(integral(f).real() == doctest::Approx(std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("cell averages of an indicator recover the area") {
    const GridSpec g = make_grid(2, 2.0, 64);
    auto disc = [](const Point& x) { return cplx{x[0] * x[0] + x[1] * x[1] < 1.0 ? 1.0 : 0.0, 0.0}; };
    const double pointwise = integral(sample(disc, g)).real();
    const double averaged = integral(sample_cell_average(disc, g, 8)).real();
    CHECK(std::abs(averaged - std::numbers::pi) < std::abs(pointwise - std::numbers::pi));
    CHECK(averaged == doctest::Approx(std::numbers::pi).epsilon(2e-3));
}

TEST_CASE("sample reports non-finite values") {
    const GridSpec g = make_grid(1, 1.0, 8);
    CHECK_THROWS_AS(sample([](const Point& x) { return cplx{1.0 / x[0], 0.0}; }, g), Error);
}

TEST_CASE("field arithmetic and evaluate") {
    const GridSpec g = make_grid(1, 1.0, 8);
    Field a = sample([](const Point& x) { return cplx{x[0], 0.0}; }, g);
    const Field b = sample([](const Point& x) { return cplx{0.0, x[0]}; }, g);
    const Field c = cplx{2.0, 0.0} * (a + b) - a;
    CHECK(c.evaluate({0.5, 0.0, 0.0}) == cplx{0.5, 1.0});
    CHECK_THROWS_AS(a.evaluate({0.3, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(a += Field(make_grid(1, 2.0, 8)), Error);
}
