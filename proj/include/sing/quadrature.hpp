#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sing/grid.hpp"

namespace sing {

/// Finite set of truncation radii, kept sorted ascending.
class TruncationLadder {
public:
    TruncationLadder() = default;

    // eps0 * ratio^k, k = 0..count-1.
    static TruncationLadder geometric(double eps0, double ratio, std::size_t count);
    static TruncationLadder from_radii(std::vector<double> radii);

    std::span<const double> radii() const { return radii_; }
    std::size_t size() const { return radii_.size(); }
    bool empty() const { return radii_.empty(); }
    double smallest() const { return radii_.front(); }
    double largest() const { return radii_.back(); }

    // Union of both ladders (duplicates removed).
    TruncationLadder merged(const TruncationLadder& other) const;
    // Copy without the radii the grid cannot resolve (below one cell diameter).
    TruncationLadder restricted_to(const GridSpec& spec) const;

private:
    explicit TruncationLadder(std::vector<double> radii);
    std::vector<double> radii_;
};

enum class KernelKind {
    riesz,     // y_j / |y|^(n+1)
    beurling,  // 1 / (pi w^2), dim 2
    cauchy,    // 1 / (pi w), dim 2
};

struct KernelSpec {
    KernelKind kind = KernelKind::riesz;
    int axis = 1;  // 1-based, riesz only

    static KernelSpec riesz(int j) { return {KernelKind::riesz, j}; }
    static KernelSpec beurling() { return {KernelKind::beurling, 1}; }
    static KernelSpec cauchy() { return {KernelKind::cauchy, 1}; }
};

cplx kernel_value(const KernelSpec& k, const Point& y, int dim);

/**
 * Truncated transform at the grid point x:
 *
 *   T^eps f(x) = sum over cells w with |x - w| > eps of f(w) K(x - w) * cell volume.
 *
 * Cells whose center lies exactly on |x - w| = eps are excluded. Throws
 * ResolutionError if eps is below one cell diameter.
 */
cplx truncated_transform(const Field& f, const KernelSpec& k, double eps, std::size_t x);

// T^eps f(x) for every radius of the ladder at once (one pass over the grid).
std::vector<cplx> truncated_profile(const Field& f, const KernelSpec& k, const TruncationLadder& ladder,
                                    std::size_t x);

// max over the ladder of |T^eps f(x)|.
double maximal_transform(const Field& f, const KernelSpec& k, const TruncationLadder& ladder, std::size_t x);

// Discrete principal value: every cell except the one at x.
cplx principal_value(const Field& f, const KernelSpec& k, std::size_t x);

// Cauchy transform (1/pi) sum f(x - w) / w, the w = 0 cell skipped.
cplx cauchy_transform(const Field& f, std::size_t x);

struct BallAverages {
    std::vector<double> radii;
    std::vector<cplx> mean;           // mean of f over the ball
    std::vector<double> mean_abs;     // mean of |f| over the ball
    std::vector<std::size_t> counts;  // cells with center in the closed ball
};

// Averages over the closed balls |w - x| <= r (cell centers, in-box cells only).
BallAverages ball_averages(const Field& g, const TruncationLadder& ladder, std::size_t x);

// max over the ladder of the mean of |f| on B(x, r).
double hl_maximal(const Field& f, const TruncationLadder& ladder, std::size_t x);

// Mean of g over the cells with center in the closed disc D(z, eps).
cplx disc_average(const Field& g, std::size_t z, double eps);

}  // namespace sing
