#include "sing/grid.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace sing {

GridSpec make_grid(int dim, double half_width, std::size_t points_per_axis) {
    if (dim < 1 || dim > kMaxDim) {
        throw ConfigError(fmt::format("grid dimension must be 1, 2 or 3 (got {})", dim));
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw ConfigError(fmt::format("grid half-width must be positive (got {})", half_width));
    }
    if (points_per_axis % 2 != 0) {
        throw ConfigError(fmt::format("points per axis must be even so the origin is a grid point (got {})",
                                      points_per_axis));
    }
    if (points_per_axis < 8) {
        throw ConfigError(fmt::format("points per axis must be at least 8 (got {})", points_per_axis));
    }
    return GridSpec(dim, half_width, points_per_axis);
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }

double GridSpec::cell_diameter() const { return spacing() * std::sqrt(static_cast<double>(dim_)); }

double GridSpec::box_volume() const { return std::pow(2.0 * half_width_, dim_); }

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim_; ++d) s *= n_;
    return s;
}

MultiIndex GridSpec::unravel(std::size_t linear) const {
    MultiIndex idx{0, 0, 0};
    for (int d = dim_ - 1; d >= 0; --d) {
        idx[d] = linear % n_;
        linear /= n_;
    }
    return idx;
}

std::size_t GridSpec::ravel(const MultiIndex& idx) const {
    std::size_t linear = 0;
    for (int d = 0; d < dim_; ++d) linear = linear * n_ + idx[d];
    return linear;
}

Point GridSpec::point(std::size_t linear) const {
    const MultiIndex idx = unravel(linear);
    Point x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim_; ++d) x[d] = coordinate(idx[d]);
    return x;
}

std::size_t GridSpec::nearest(const Point& x) const {
    MultiIndex idx{0, 0, 0};
    const double h = spacing();
    for (int d = 0; d < dim_; ++d) {
        const double k = std::round((x[d] + half_width_) / h);
        idx[d] = static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(n_ - 1)));
    }
    return ravel(idx);
}

std::size_t GridSpec::origin_index() const {
    MultiIndex idx{0, 0, 0};
    for (int d = 0; d < dim_; ++d) idx[d] = n_ / 2;
    return ravel(idx);
}

double norm(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Field::Field(GridSpec spec) : spec_(spec), values_(spec.size(), cplx{0.0, 0.0}) {}

Field::Field(GridSpec spec, std::vector<cplx> values) : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) {
        throw Error(fmt::format("field has {} values but the grid has {} points", values_.size(), spec_.size()));
    }
}

cplx Field::evaluate(const Point& x) const {
    const std::size_t i = spec_.nearest(x);
    const Point g = spec_.point(i);
    const double tol = 1e-9 * spec_.spacing();
    for (int d = 0; d < spec_.dim(); ++d) {
        if (std::abs(g[d] - x[d]) > tol) {
            throw Error(fmt::format("({}, {}, {}) is not a grid point", x[0], x[1], x[2]));
        }
    }
    return values_[i];
}

void require_same_grid(const Field& a, const Field& b) {
    if (!(a.spec() == b.spec())) throw Error("fields live on different grids");
}

Field& Field::operator+=(const Field& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

Field& Field::operator*=(cplx scale) {
    for (auto& v : values_) v *= scale;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

Field abs_pow(const Field& f, double p) {
    Field out(f.spec());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::pow(std::abs(f[i]), p);
    return out;
}

namespace {

void check_finite(cplx v, const Point& x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(fmt::format("non-finite sample at ({}, {}, {})", x[0], x[1], x[2]));
    }
}

}  // namespace

Field sample(const PointFunction& fn, const GridSpec& spec) {
    Field out(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const Point x = spec.point(i);
        const cplx v = fn(x);
        check_finite(v, x);
        out[i] = v;
    }
    return out;
}

Field sample_cell_average(const PointFunction& fn, const GridSpec& spec, int subsamples) {
    if (subsamples < 1) throw ConfigError("cell averaging needs at least one subsample per axis");
    const double h = spec.spacing();
    const int dim = spec.dim();
    std::vector<double> offsets(static_cast<std::size_t>(subsamples));
    for (int s = 0; s < subsamples; ++s) offsets[s] = h * ((s + 0.5) / subsamples - 0.5);

    std::size_t per_cell = 1;
    for (int d = 0; d < dim; ++d) per_cell *= offsets.size();
    const double inv = 1.0 / static_cast<double>(per_cell);

    Field out(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const Point c = spec.point(i);
        cplx acc{0.0, 0.0};
        for (std::size_t q = 0; q < per_cell; ++q) {
            Point x = c;
            std::size_t r = q;
            for (int d = 0; d < dim; ++d) {
                x[d] += offsets[r % offsets.size()];
                r /= offsets.size();
            }
            const cplx v = fn(x);
            check_finite(v, x);
            acc += v;
        }
        out[i] = acc * inv;
    }
    return out;
}

cplx integral(const Field& f) {
    cplx acc{0.0, 0.0};
    for (const auto& v : f.values()) acc += v;
    return acc * f.spec().cell_volume();
}

}  // namespace sing
