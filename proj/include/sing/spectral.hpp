#pragma once

#include <functional>
#include <span>

#include "sing/grid.hpp"

namespace sing {

/**
 * Fourier multipliers on the periodic box.
 *
 * Frequencies are the FFT lattice xi = 2*pi*k / (2L), k in [-N/2, N/2), with the
 * Nyquist row treated as an ordinary nonzero frequency. Every multiplier
 * vanishes at xi = 0, so transforms are defined modulo constants.
 *
 * Operators accept a zero-padding factor P >= 1: the field is embedded at the
 * center of a box P times wider before transforming, and the result is cropped
 * back. P = 1 is the plain periodic transform; P = 2 suppresses most of the
 * interaction with periodic images when comparing against free-space
 * quadrature.
 */
enum class MultiplierKind { riesz, hilbert, beurling, inverse_beurling };

struct MultiplierSpec {
    int dim = 2;
    MultiplierKind kind = MultiplierKind::riesz;
    int axis = 1;                // 1-based, riesz only
    double normalization = 1.0;  // gamma_n for riesz; unused otherwise
};

// Symbol value at frequency xi (length dim).
cplx multiplier(const MultiplierSpec& spec, std::span<const double> xi);

using Symbol = std::function<cplx(std::span<const double> xi)>;

// Forward FFT, pointwise product with the symbol, inverse FFT.
Field apply_symbol(const Field& f, const Symbol& symbol, int padding = 1);
Field apply_multiplier(const Field& f, const MultiplierSpec& spec, int padding = 1);

struct RieszCalibration {
    int dim = 0;
    double gamma = 0.0;
    double relative_residual = 0.0;  // max |quad - gamma * spectral| / max |quad|
};

// Runs the quadrature-vs-multiplier comparison on exp(-|x|^2). Throws Error if
// the residual after fitting exceeds `tolerance`.
RieszCalibration run_riesz_calibration(int dim, double tolerance = 1e-3);

// Cached gamma_n: the constant with R_j having symbol -i * gamma_n * xi_j / |xi|
// for the kernel y_j / |y|^(n+1).
double calibrate_riesz_constant(int dim);

// j is 1-based.
Field riesz(const Field& f, int j, int padding = 1);
// Standard Hilbert transform (symbol -i sgn xi); dim 1 only.
Field hilbert(const Field& f, int padding = 1);
// Beurling transform (kernel 1/(pi w^2)) reading a 2-D field as a function on C.
Field beurling(const Field& f, int padding = 1);
// Inverse Beurling transform (kernel 1/(pi conj(w)^2)).
Field inverse_beurling(const Field& f, int padding = 1);

// Spectral d/dz-bar and d/dz on a 2-D field.
Field d_zbar(const Field& f);
Field d_z(const Field& f);

// phi(x) = c (1 - |x|^2)^2 on |x| < 1 with c fixed by unit mass, and its
// dilation phi_eps(x) = eps^-n phi(x / eps).
double mollifier_constant(int dim);
double mollifier(const Point& x, double eps, int dim);

/**
 * The field f_eps with R_1 f_eps = phi_eps(. - a) - phi_eps(. - b), a = -e_1,
 * b = e_1, built by dividing the transform of the mollified dipole by the R_1
 * symbol. On the plane xi_1 = 0 the numerator vanishes with the symbol and the
 * quotient takes its finite limit -2 |xi| phi_eps^(xi) / gamma.
 *
 * Requires 0 < eps < 1/4, at least 8 cells across the mollifier support, and
 * unit translations that are whole numbers of cells. Throws ResolutionError
 * otherwise.
 */
Field dipole_preimage(double eps, const GridSpec& spec);

// Sampled phi_eps(x - a) - phi_eps(x - b).
Field mollified_dipole(double eps, const GridSpec& spec);

}  // namespace sing
