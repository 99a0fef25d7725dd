#pragma once

#include <cstddef>
#include <vector>

#include "sing/grid.hpp"

namespace sing {

/// Surface rule for p(x) = integral over |y| = 1 of |x - y|^(1-n).
struct SpherePotentialSpec {
    int dim = 2;
    // Circle nodes (n = 2) or polar-angle nodes (n = 3). Zero selects
    // max(64, ceil(16 / d(x))) per evaluation point.
    std::size_t quadrature_nodes = 0;
};

// d(x) = | |x| - 1 |
double sphere_distance(const Point& x);

std::size_t default_sphere_nodes(double d);

// Throws ConfigError for dim outside {2, 3}, Error if x is on the sphere or the
// node spacing exceeds d(x) / 2.
double p_eval(const Point& x, const SpherePotentialSpec& spec);

struct HFieldOptions {
    int subsamples = 8;  // cell averaging of the truncated kernels
    int padding = 1;
    double boundary_tolerance = 0.02;  // largest admissible kernel size |x|^-n on the box boundary
};

// chi_{|x| > 1}(x) x_j / |x|^(n+1), averaged over each cell.
Field exterior_kernel(const GridSpec& spec, int j, int subsamples);

/**
 * h = -(1 / gamma_n^2) sum_i R_i(chi_{B^c} K_i), so that R_j h = chi_{B^c} K_j
 * (the symbols of R_j R_i sum to -gamma_n^2 on gradient fields).
 *
 * Requires dim 2 or 3; throws ResolutionError when the kernel has not decayed
 * below `boundary_tolerance` at the box boundary.
 */
Field h_field(const GridSpec& spec, const HFieldOptions& options = {});

struct C0Fit {
    double c0 = 0.0;
    double intercept = 0.0;
    double b_sup = 0.0;      // sup |h - c0 p| on the window
    double h_sup = 0.0;      // sup |h| on the window
    double residual_rms = 0.0;
    std::size_t points = 0;
};

// Least squares h ~ c0 p + beta over grid points with d(x) in [d_lo, d_hi].
// Throws Error when p barely varies on the window.
C0Fit fit_c0_and_bound_b(const Field& h, double d_lo, double d_hi);

// Default window: [2 cells, 0.3].
C0Fit fit_c0_and_bound_b(const Field& h);

}  // namespace sing
