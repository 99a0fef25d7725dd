#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sing/grid.hpp"
#include "sing/quadrature.hpp"

namespace sing {

/// Bumps phi_eps(. - a) - phi_eps(. - b) with a = -e_1, b = e_1.
struct DipoleSource {
    double eps = 0.125;
    GridSpec spec;

    Point a() const { return {-1.0, 0.0, 0.0}; }
    Point b() const { return {1.0, 0.0, 0.0}; }
};

// Checks 0 < eps < 1/4 and that both supports sit inside the box with margin
// L/2 (1 + eps <= L/2). Throws ConfigError / ResolutionError.
DipoleSource make_dipole_source(double eps, const GridSpec& spec);

// f_eps with R_1 f_eps = phi_eps(. - a) - phi_eps(. - b); see dipole_preimage.
Field build_f_eps(const DipoleSource& src);

struct WeightedPoint {
    std::size_t index = 0;
    double weight = 0.0;  // measure of the region the point stands for
};

/**
 * Quadtree (octree) cover of the box: cells of side `base_spacing` centered at
 * grid points, each split while its center is closer than twice its side to
 * one of `hot_spots` and its children stay at least `min_side` wide. Returns
 * one point per leaf with the leaf volume as weight; the weights sum to the
 * box volume.
 */
std::vector<WeightedPoint> adaptive_eval_points(const GridSpec& spec, double base_spacing, double min_side,
                                                const std::vector<Point>& hot_spots);

struct SweepOptions {
    std::vector<double> eps_list{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    double half_width = 4.0;       // per-eps box [-L, L)^n
    double cells_per_eps = 4.0;    // h = eps / cells_per_eps
    std::size_t max_points = 4096; // per axis
    double ladder_eps0 = 0.0625;
    double ladder_ratio = 1.25;
    std::size_t ladder_count = 24;
    std::size_t lambda_count = 64;
    double lambda_min = 1e-4;
    double base_spacing = 0.125;
    int dim = 2;
};

struct SweepRecord {
    double eps = 0.0;
    std::size_t points_per_axis = 0;
    double half_width = 0.0;
    double spacing = 0.0;
    double l1_of_R1f = 0.0;
    double weak_quasinorm_of_R1star = 0.0;
    double argmax_lambda = 0.0;
    double max_R1star = 0.0;
    double integral_f = 0.0;
    double parity_defect = 0.0;  // max |f(x) - f(-x_1, x')| / max |f|
    std::size_t eval_points = 0;
    double covered_measure = 0.0;
    std::size_t ladder_size = 0;
    std::size_t lambda_count = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::string skipped;  // reason when the record could not be computed
};

// One record per eps; eps values the grid cap cannot resolve are returned with
// `skipped` set instead of throwing.
std::vector<SweepRecord> run_sweep(const SweepOptions& options);

// Grid used for one sweep entry.
GridSpec sweep_grid(double eps, const SweepOptions& options);

struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t used = 0;
};

// Least squares weak quasinorm ~ slope * log(1/eps) + intercept over the
// records without a skip reason. Throws Error for fewer than 4 records or a
// degenerate (constant) response.
LogFit fit_log_growth(const std::vector<SweepRecord>& records);

struct AxisSample {
    double eps = 0.0;
    double delta = 0.0;   // |x - b|
    double x1 = 0.0;
    double value = 0.0;   // |R_1^delta f_eps(x)|
    double c_needed = 0.0;  // delta^-n log(1/eps) / value
    bool in_eta_window = false;  // 4 <= delta <= eps^-eta
};

struct AxisCheckOptions {
    std::vector<double> eps_list{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    std::vector<double> deltas{4.0, 5.0, 6.0, 7.0, 8.0};
    double half_width = 10.0;
    double cells_per_eps = 4.0;
    std::size_t max_points = 4096;
    double eta = 0.25;
    int dim = 2;
};

struct AxisCheckResult {
    std::vector<AxisSample> samples;
    std::vector<double> skipped_eps;  // grids above the point cap
    // max over samples of c_needed per eps (index-aligned with `fitted_eps`)
    std::vector<double> fitted_eps;
    std::vector<double> c_fit;
    std::size_t window_samples = 0;   // samples inside the eta window
    std::optional<double> window_c;   // largest c_needed inside the window, if any
};

// Pointwise lower bound spot check on the positive x_1 axis, x = b + delta e_1.
AxisCheckResult run_axis_check(const AxisCheckOptions& options);

}  // namespace sing
