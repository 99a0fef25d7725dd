#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sing/error.hpp"

namespace sing {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 3;

// A point of R^n, n <= 3. Unused trailing coordinates are zero.
using Point = std::array<double, kMaxDim>;
using MultiIndex = std::array<std::size_t, kMaxDim>;

/**
 * Uniform periodic grid on the centered box [-L, L)^n.
 *
 * Coordinates along each axis are x_k = -L + k * (2L / N), k = 0..N-1, so the
 * origin is the grid point k = N / 2. Linear indices are row-major with the
 * last axis varying fastest (the FFTW layout).
 */
class GridSpec {
public:
    GridSpec() = default;

    int dim() const { return dim_; }
    double half_width() const { return half_width_; }
    std::size_t points_per_axis() const { return n_; }

    double spacing() const { return 2.0 * half_width_ / static_cast<double>(n_); }
    double cell_volume() const;
    double cell_diameter() const;
    double box_volume() const;
    std::size_t size() const;

    double coordinate(std::size_t k) const { return -half_width_ + static_cast<double>(k) * spacing(); }
    Point point(std::size_t linear) const;
    MultiIndex unravel(std::size_t linear) const;
    std::size_t ravel(const MultiIndex& idx) const;

    // Linear index of the grid point nearest to x (clamped to the box).
    std::size_t nearest(const Point& x) const;
    std::size_t origin_index() const;

    bool operator==(const GridSpec&) const = default;

private:
    friend GridSpec make_grid(int dim, double half_width, std::size_t points_per_axis);
    GridSpec(int dim, double half_width, std::size_t n) : dim_(dim), half_width_(half_width), n_(n) {}

    int dim_ = 0;
    double half_width_ = 0.0;
    std::size_t n_ = 0;
};

// Throws ConfigError for dim outside {1,2,3}, L <= 0, odd N or N < 8.
GridSpec make_grid(int dim, double half_width, std::size_t points_per_axis);

double norm(const Point& x);
Point operator-(const Point& a, const Point& b);

/// Complex samples over a grid. Immutable in spirit: operations return new fields.
class Field {
public:
    Field() = default;
    explicit Field(GridSpec spec);
    Field(GridSpec spec, std::vector<cplx> values);

    const GridSpec& spec() const { return spec_; }
    std::span<const cplx> values() const { return values_; }
    std::span<cplx> mutable_values() { return values_; }
    std::size_t size() const { return values_.size(); }

    const cplx& operator[](std::size_t i) const { return values_[i]; }
    cplx& operator[](std::size_t i) { return values_[i]; }

    // Value at the grid point x; throws if x is not a grid point.
    cplx evaluate(const Point& x) const;

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(cplx scale);

private:
    GridSpec spec_;
    std::vector<cplx> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

// Fields whose values are |f|^p (real).
Field abs_pow(const Field& f, double p);

using PointFunction = std::function<cplx(const Point&)>;

// values[k] = fn(x_k). A non-finite value raises an Error naming the point.
Field sample(const PointFunction& fn, const GridSpec& spec);

// Cell average of fn estimated with `subsamples` midpoints per axis. Used for
// discontinuous data (indicators, truncated kernels), where point sampling
// leaves a staircase boundary.
Field sample_cell_average(const PointFunction& fn, const GridSpec& spec, int subsamples);

// Midpoint rule: cell_volume * sum of values.
cplx integral(const Field& f);

void require_same_grid(const Field& a, const Field& b);

}  // namespace sing
