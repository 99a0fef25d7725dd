#include "sing/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>

#include <fftw3.h>
#include <fmt/format.h>

#include "sing/quadrature.hpp"

namespace sing {

namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

class FftBuffer {
public:
    explicit FftBuffer(std::size_t n) : size_(n), data_(fftw_alloc_complex(n)) {
        if (!data_) throw Error(fmt::format("cannot allocate an FFT buffer of {} points", n));
        std::fill_n(reinterpret_cast<cplx*>(data_.get()), n, cplx{0.0, 0.0});
    }
    cplx* data() { return reinterpret_cast<cplx*>(data_.get()); }
    fftw_complex* raw() { return data_.get(); }
    std::size_t size() const { return size_; }

private:
    std::size_t size_;
    std::unique_ptr<fftw_complex, FftwFree> data_;
};

class FftPlan {
public:
    FftPlan(int dim, int n, FftBuffer& buf, int sign) {
        std::array<int, kMaxDim> dims{n, n, n};
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft(dim, dims.data(), buf.raw(), buf.raw(), sign, FFTW_ESTIMATE);
        if (!plan_) throw Error("FFTW failed to create a plan");
    }
    ~FftPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void execute() { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

// Signed FFT frequency of index k on an n-point axis of half-width half_width.
double frequency(std::size_t k, std::size_t n, double half_width) {
    const long kk = k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
    return 2.0 * std::numbers::pi * static_cast<double>(kk) / (2.0 * half_width);
}

// Loops over all frequencies of an n^dim lattice in FFTW order.
template <class F>
void for_each_frequency(int dim, std::size_t n, double half_width, F&& body) {
    std::vector<double> axis(n);
    for (std::size_t k = 0; k < n; ++k) axis[k] = frequency(k, n, half_width);
    std::array<double, kMaxDim> xi{0.0, 0.0, 0.0};
    const std::size_t n1 = dim >= 2 ? n : 1;
    const std::size_t n2 = dim >= 3 ? n : 1;
    std::size_t linear = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n1; ++b) {
            for (std::size_t c = 0; c < n2; ++c, ++linear) {
                xi[0] = axis[a];
                if (dim >= 2) xi[1] = axis[b];
                if (dim >= 3) xi[2] = axis[c];
                body(linear, std::span<const double>(xi.data(), static_cast<std::size_t>(dim)));
            }
        }
    }
}

// Copy f into the center of a padded buffer, or crop it back out.
void embed(const Field& f, int padding, FftBuffer& buf) {
    const GridSpec& g = f.spec();
    const int dim = g.dim();
    const std::size_t n = g.points_per_axis();
    const std::size_t np = n * static_cast<std::size_t>(padding);
    const std::size_t off = (np - n) / 2;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const MultiIndex idx = g.unravel(i);
        std::size_t lin = 0;
        for (int d = 0; d < dim; ++d) lin = lin * np + idx[d] + off;
        buf.data()[lin] = f[i];
    }
}

Field crop(FftBuffer& buf, const GridSpec& g, int padding, double scale) {
    const int dim = g.dim();
    const std::size_t n = g.points_per_axis();
    const std::size_t np = n * static_cast<std::size_t>(padding);
    const std::size_t off = (np - n) / 2;
    Field out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const MultiIndex idx = g.unravel(i);
        std::size_t lin = 0;
        for (int d = 0; d < dim; ++d) lin = lin * np + idx[d] + off;
        out[i] = buf.data()[lin] * scale;
    }
    return out;
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

double xi_norm(std::span<const double> xi) {
    double s = 0.0;
    for (double v : xi) s += v * v;
    return std::sqrt(s);
}

}  // namespace

cplx multiplier(const MultiplierSpec& spec, std::span<const double> xi) {
    const double r = xi_norm(xi);
    if (r == 0.0) return {0.0, 0.0};
    switch (spec.kind) {
    case MultiplierKind::riesz:
        return {0.0, -spec.normalization * xi[spec.axis - 1] / r};
    case MultiplierKind::hilbert:
        return {0.0, xi[0] > 0.0 ? -1.0 : 1.0};
    case MultiplierKind::beurling: {
        const cplx z{xi[0], xi[1]};
        return -std::conj(z) / z;
    }
    case MultiplierKind::inverse_beurling: {
        const cplx z{xi[0], xi[1]};
        return -z / std::conj(z);
    }
    }
    return {0.0, 0.0};
}

Field apply_symbol(const Field& f, const Symbol& symbol, int padding) {
    if (padding < 1) throw ConfigError(fmt::format("padding factor must be >= 1 (got {})", padding));
    const GridSpec& g = f.spec();
    const int dim = g.dim();
    const std::size_t np = g.points_per_axis() * static_cast<std::size_t>(padding);
    const std::size_t total = ipow(np, dim);

    FftBuffer buf(total);
    embed(f, padding, buf);
    {
        FftPlan fwd(dim, static_cast<int>(np), buf, FFTW_FORWARD);
        fwd.execute();
    }
    cplx* data = buf.data();
    for_each_frequency(dim, np, g.half_width() * padding,
                       [&](std::size_t i, std::span<const double> xi) { data[i] *= symbol(xi); });
    {
        FftPlan inv(dim, static_cast<int>(np), buf, FFTW_BACKWARD);
        inv.execute();
    }
    return crop(buf, g, padding, 1.0 / static_cast<double>(total));
}

Field apply_multiplier(const Field& f, const MultiplierSpec& spec, int padding) {
    if (spec.dim != f.spec().dim()) throw ConfigError("multiplier dimension does not match the grid");
    if (spec.kind == MultiplierKind::riesz && (spec.axis < 1 || spec.axis > spec.dim)) {
        throw ConfigError(fmt::format("Riesz axis {} outside 1..{}", spec.axis, spec.dim));
    }
    return apply_symbol(
        f, [&spec](std::span<const double> xi) { return multiplier(spec, xi); }, padding);
}

namespace {

struct CalibrationSetup {
    double half_width;
    std::size_t coarse;
};

// Boxes wide enough that periodic images of the Gaussian's Riesz tail stay
// below the calibration tolerance near the origin.
CalibrationSetup calibration_setup(int dim) {
    switch (dim) {
    case 1: return {64.0, 4096};
    case 2: return {16.0, 512};
    default: return {8.0, 64};
    }
}

}  // namespace

RieszCalibration run_riesz_calibration(int dim, double tolerance) {
    if (dim < 1 || dim > kMaxDim) throw ConfigError(fmt::format("no Riesz calibration for dim {}", dim));
    const auto setup = calibration_setup(dim);
    const std::array<Point, 4> probes{Point{0.5, 0.25, 0.0}, Point{-0.25, 0.5, 0.25}, Point{0.75, -0.5, 0.5},
                                      Point{0.25, 0.0, -0.25}};
    auto restrict_dim = [dim](Point p) {
        for (int d = dim; d < kMaxDim; ++d) p[d] = 0.0;
        return p;
    };
    const auto gaussian = [](const Point& x) { return cplx{std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])), 0.0}; };

    // Discrete principal value has an O(h) leading error; one Richardson step
    // between N and 2N removes it.
    std::array<double, 4> quad_coarse{};
    std::array<double, 4> quad_fine{};
    std::array<double, 4> spectral_fine{};
    for (int level = 0; level < 2; ++level) {
        const GridSpec g = make_grid(dim, setup.half_width, setup.coarse << level);
        const Field f = sample(gaussian, g);
        const Field unit = apply_multiplier(f, MultiplierSpec{dim, MultiplierKind::riesz, 1, 1.0});
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const std::size_t idx = g.nearest(restrict_dim(probes[p]));
            const double q = principal_value(f, KernelSpec::riesz(1), idx).real();
            if (level == 0) {
                quad_coarse[p] = q;
            } else {
                quad_fine[p] = q;
                spectral_fine[p] = unit[idx].real();
            }
        }
    }

    double qs = 0.0;
    double ss = 0.0;
    std::array<double, 4> extrap{};
    for (std::size_t p = 0; p < probes.size(); ++p) {
        extrap[p] = 2.0 * quad_fine[p] - quad_coarse[p];
        qs += extrap[p] * spectral_fine[p];
        ss += spectral_fine[p] * spectral_fine[p];
    }
    const double gamma = qs / ss;
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        worst = std::max(worst, std::abs(extrap[p] - gamma * spectral_fine[p]));
        scale = std::max(scale, std::abs(extrap[p]));
    }
    const RieszCalibration out{dim, gamma, worst / scale};
    if (!(out.relative_residual < tolerance)) {
        throw Error(fmt::format("Riesz calibration mismatch in dim {}: residual {} exceeds {} (gamma {})", dim,
                                out.relative_residual, tolerance, gamma));
    }
    return out;
}

double calibrate_riesz_constant(int dim) {
    if (dim < 1 || dim > kMaxDim) throw ConfigError(fmt::format("no Riesz calibration for dim {}", dim));
    static std::mutex mutex;
    static std::array<std::optional<double>, kMaxDim + 1> cache;
    std::lock_guard lock(mutex);
    if (!cache[dim]) cache[dim] = run_riesz_calibration(dim).gamma;
    return *cache[dim];
}

Field riesz(const Field& f, int j, int padding) {
    const int dim = f.spec().dim();
    return apply_multiplier(f, MultiplierSpec{dim, MultiplierKind::riesz, j, calibrate_riesz_constant(dim)}, padding);
}

Field hilbert(const Field& f, int padding) {
    if (f.spec().dim() != 1) throw ConfigError("the Hilbert transform acts on 1-D fields");
    return apply_multiplier(f, MultiplierSpec{1, MultiplierKind::hilbert, 1, 1.0}, padding);
}

Field beurling(const Field& f, int padding) {
    if (f.spec().dim() != 2) throw ConfigError("the Beurling transform acts on 2-D fields");
    return apply_multiplier(f, MultiplierSpec{2, MultiplierKind::beurling, 1, 1.0}, padding);
}

Field inverse_beurling(const Field& f, int padding) {
    if (f.spec().dim() != 2) throw ConfigError("the inverse Beurling transform acts on 2-D fields");
    return apply_multiplier(f, MultiplierSpec{2, MultiplierKind::inverse_beurling, 1, 1.0}, padding);
}

Field d_zbar(const Field& f) {
    if (f.spec().dim() != 2) throw ConfigError("d/dzbar acts on 2-D fields");
    return apply_symbol(f, [](std::span<const double> xi) { return cplx{0.0, 0.5} * cplx{xi[0], xi[1]}; });
}

Field d_z(const Field& f) {
    if (f.spec().dim() != 2) throw ConfigError("d/dz acts on 2-D fields");
    return apply_symbol(f, [](std::span<const double> xi) { return cplx{0.0, 0.5} * cplx{xi[0], -xi[1]}; });
}

double mollifier_constant(int dim) {
    const double n = dim;
    const double sphere_area = 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
    // integral of r^(n-1) (1 - r^2)^2 over [0, 1]
    const double radial = 1.0 / n - 2.0 / (n + 2.0) + 1.0 / (n + 4.0);
    return 1.0 / (sphere_area * radial);
}

double mollifier(const Point& x, double eps, int dim) {
    const double r2 = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (eps * eps);
    if (r2 >= 1.0) return 0.0;
    const double u = 1.0 - r2;
    return mollifier_constant(dim) * u * u / std::pow(eps, dim);
}

namespace {

void check_dipole_grid(double eps, const GridSpec& g) {
    if (!(eps > 0.0 && eps < 0.25)) throw ConfigError(fmt::format("mollifier width must lie in (0, 1/4) (got {})", eps));
    const double h = g.spacing();
    if (2.0 * eps < 8.0 * h * (1.0 - 1e-12)) {
        throw ResolutionError(fmt::format("mollifier of width {} spans fewer than 8 cells of size {}", eps, h));
    }
    const double cells_per_unit = 1.0 / h;
    if (std::abs(cells_per_unit - std::round(cells_per_unit)) > 1e-9 * cells_per_unit) {
        throw ResolutionError(fmt::format("unit shift is not a whole number of cells (h = {})", h));
    }
    if (1.0 + eps >= g.half_width()) {
        throw ResolutionError(fmt::format("box half-width {} does not contain the dipole bumps", g.half_width()));
    }
}

std::vector<cplx> forward_fft(const Field& f) {
    const GridSpec& g = f.spec();
    FftBuffer buf(g.size());
    std::copy(f.values().begin(), f.values().end(), buf.data());
    FftPlan plan(g.dim(), static_cast<int>(g.points_per_axis()), buf, FFTW_FORWARD);
    plan.execute();
    return {buf.data(), buf.data() + buf.size()};
}

Field inverse_fft(std::vector<cplx> spectrum, const GridSpec& g) {
    FftBuffer buf(g.size());
    std::copy(spectrum.begin(), spectrum.end(), buf.data());
    spectrum.clear();
    spectrum.shrink_to_fit();
    FftPlan plan(g.dim(), static_cast<int>(g.points_per_axis()), buf, FFTW_BACKWARD);
    plan.execute();
    const double scale = 1.0 / static_cast<double>(g.size());
    std::vector<cplx> values(buf.data(), buf.data() + buf.size());
    for (auto& v : values) v *= scale;
    return Field(g, std::move(values));
}

}  // namespace

Field mollified_dipole(double eps, const GridSpec& g) {
    const int dim = g.dim();
    return sample(
        [eps, dim](const Point& x) {
            Point xa = x;
            xa[0] += 1.0;  // x - a, a = -e_1
            Point xb = x;
            xb[0] -= 1.0;  // x - b, b = e_1
            return cplx{mollifier(xa, eps, dim) - mollifier(xb, eps, dim), 0.0};
        },
        g);
}

Field dipole_preimage(double eps, const GridSpec& g) {
    check_dipole_grid(eps, g);
    const int dim = g.dim();
    const double gamma = calibrate_riesz_constant(dim);

    const std::vector<cplx> dipole_hat = forward_fft(mollified_dipole(eps, g));
    std::vector<cplx> bump_hat =
        forward_fft(sample([eps, dim](const Point& x) { return cplx{mollifier(x, eps, dim), 0.0}; }, g));

    double scale = 0.0;
    for (const auto& v : dipole_hat) scale = std::max(scale, std::abs(v));
    const MultiplierSpec r1{dim, MultiplierKind::riesz, 1, gamma};

    // bump_hat is overwritten in place with the quotient.
    for_each_frequency(dim, g.points_per_axis(), g.half_width(), [&](std::size_t i, std::span<const double> xi) {
        if (xi[0] != 0.0) {
            bump_hat[i] = dipole_hat[i] / multiplier(r1, xi);
            return;
        }
        if (std::abs(dipole_hat[i]) > 1e-10 * scale) {
            throw Error(fmt::format("dipole transform does not vanish on xi_1 = 0 (|value| = {})",
                                    std::abs(dipole_hat[i])));
        }
        bump_hat[i] *= -2.0 * xi_norm(xi) / gamma;
    });
    return inverse_fft(std::move(bump_hat), g);
}

}  // namespace sing
