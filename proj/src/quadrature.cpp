#include "sing/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace sing {

TruncationLadder::TruncationLadder(std::vector<double> radii) : radii_(std::move(radii)) {
    std::sort(radii_.begin(), radii_.end());
    radii_.erase(std::unique(radii_.begin(), radii_.end()), radii_.end());
}

TruncationLadder TruncationLadder::geometric(double eps0, double ratio, std::size_t count) {
    if (!(eps0 > 0.0) || !(ratio > 0.0) || ratio == 1.0 || count == 0) {
        throw ConfigError(fmt::format("bad geometric ladder eps0={} ratio={} count={}", eps0, ratio, count));
    }
    std::vector<double> r(count);
    for (std::size_t k = 0; k < count; ++k) r[k] = eps0 * std::pow(ratio, static_cast<double>(k));
    return TruncationLadder(std::move(r));
}

TruncationLadder TruncationLadder::from_radii(std::vector<double> radii) {
    for (double r : radii) {
        if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError(fmt::format("bad truncation radius {}", r));
    }
    return TruncationLadder(std::move(radii));
}

TruncationLadder TruncationLadder::merged(const TruncationLadder& other) const {
    std::vector<double> r = radii_;
    r.insert(r.end(), other.radii_.begin(), other.radii_.end());
    return TruncationLadder(std::move(r));
}

TruncationLadder TruncationLadder::restricted_to(const GridSpec& spec) const {
    std::vector<double> r;
    for (double v : radii_) {
        if (v >= spec.cell_diameter()) r.push_back(v);
    }
    return TruncationLadder(std::move(r));
}

cplx kernel_value(const KernelSpec& k, const Point& y, int dim) {
    const double r = norm(y);
    if (r == 0.0) return {0.0, 0.0};
    switch (k.kind) {
    case KernelKind::riesz:
        return {y[k.axis - 1] / std::pow(r, dim + 1), 0.0};
    case KernelKind::beurling: {
        const cplx w{y[0], y[1]};
        return 1.0 / (std::numbers::pi * w * w);
    }
    case KernelKind::cauchy:
        return 1.0 / (std::numbers::pi * cplx{y[0], y[1]});
    }
    return {0.0, 0.0};
}

namespace {

/*
 * Shell decomposition of the grid around a point x.
 *
 * Radii are given as squared multiples of the grid spacing, q_0 <= ... <= q_{m-1}.
 * A cell at integer offset v = x - w (s = |v|^2) falls in bin b = #{k : s > q_k},
 * so bin 0 is the closed ball of radius sqrt(q_0) and bin m is everything outside
 * the largest radius. Each transverse row is split into contiguous index ranges
 * with a common bin, which keeps the inner loops branch-free.
 */
struct Shells {
    std::vector<cplx> sums;
    std::vector<std::size_t> counts;
};

// Largest integer t >= 0 with t^2 <= v, or -1 when v < 0.
long isqrt_floor(double v) {
    if (v < 0.0) return -1;
    auto t = static_cast<long>(std::floor(std::sqrt(v)));
    while (static_cast<double>(t + 1) * static_cast<double>(t + 1) <= v) ++t;
    while (t > 0 && static_cast<double>(t) * static_cast<double>(t) > v) --t;
    return t;
}

enum class Source { value, magnitude };

// Weight functors: given the last-axis offset i, transverse offsets (t0, t1) and
// s = |v|^2, produce the kernel weight times the cell volume.
struct UnitWeight {
    void operator()(double, double, double, double, double& wr, double& wi) const {
        wr = 1.0;
        wi = 0.0;
    }
};

// Dim and Axis are compile-time so the inner loop stays branch-free and vectorizes.
template <int Dim, int Axis>
struct RieszWeight {
    void operator()(double i, double t0, double t1, double s, double& wr, double& wi) const {
        double num;
        if constexpr (Axis == Dim) {
            num = i;
        } else if constexpr (Axis == 1) {
            num = t0;
        } else {
            num = t1;
        }
        if constexpr (Dim == 1) {
            wr = num / s;
        } else if constexpr (Dim == 2) {
            wr = num / (s * std::sqrt(s));
        } else {
            wr = num / (s * s);
        }
        wi = 0.0;
    }
};

struct BeurlingWeight {
    // 1/(pi w^2) h^2 with w = t0 + i*i (h cancels).
    void operator()(double i, double t0, double, double s, double& wr, double& wi) const {
        const double inv = 1.0 / (std::numbers::pi * s * s);
        wr = (t0 * t0 - i * i) * inv;
        wi = -2.0 * t0 * i * inv;
    }
};

struct CauchyWeight {
    double h;
    // h^2 / (pi w) with w = h (t0 + i*i)
    void operator()(double i, double t0, double, double s, double& wr, double& wi) const {
        const double inv = h / (std::numbers::pi * s);
        wr = t0 * inv;
        wi = -i * inv;
    }
};

template <Source src, class W>
cplx accumulate_range(const cplx* row, long kx, long lo, long hi, double t0, double t1, double sigma,
                      const W& weight) {
    double ar = 0.0;
    double ai = 0.0;
    const double* data = reinterpret_cast<const double*>(row);
#pragma omp simd reduction(+ : ar, ai)
    for (long k = lo; k <= hi; ++k) {
        const double i = static_cast<double>(kx - k);
        const double s = sigma + i * i;
        double wr;
        double wi;
        weight(i, t0, t1, s, wr, wi);
        double fr = data[2 * k];
        double fi = data[2 * k + 1];
        if constexpr (src == Source::magnitude) {
            fr = std::sqrt(fr * fr + fi * fi);
            fi = 0.0;
        }
        ar += fr * wr - fi * wi;
        ai += fr * wi + fi * wr;
    }
    return {ar, ai};
}

template <Source src, class W>
Shells shell_sums(const Field& f, std::size_t x, std::span<const double> q, const W& weight, bool skip_center) {
    const GridSpec& g = f.spec();
    const int dim = g.dim();
    const long n = static_cast<long>(g.points_per_axis());
    const MultiIndex xi = g.unravel(x);
    const std::size_t m = q.size();

    Shells out{std::vector<cplx>(m + 1, cplx{0.0, 0.0}), std::vector<std::size_t>(m + 1, 0)};
    std::vector<long> t(m);

    const long kx = static_cast<long>(xi[dim - 1]);
    const long rows0 = dim >= 2 ? n : 1;
    const long rows1 = dim >= 3 ? n : 1;
    const cplx* base = f.values().data();

    for (long r0 = 0; r0 < rows0; ++r0) {
        for (long r1 = 0; r1 < rows1; ++r1) {
            const double t0 = dim >= 2 ? static_cast<double>(static_cast<long>(xi[0]) - r0) : 0.0;
            const double t1 = dim >= 3 ? static_cast<double>(static_cast<long>(xi[1]) - r1) : 0.0;
            const double sigma = t0 * t0 + t1 * t1;
            const cplx* row = base + (r0 * rows1 + r1) * n;

            for (std::size_t b = 0; b < m; ++b) t[b] = isqrt_floor(q[b] - sigma);

            long prev = -1;
            for (std::size_t b = 0; b <= m; ++b) {
                const long tb = b < m ? t[b] : n;  // n exceeds every in-row offset
                if (tb <= prev) continue;
                // offsets prev < |i| <= tb, i = kx - k
                const long left_lo = std::max(0L, kx - tb);
                const long left_hi = std::min(n - 1, kx - prev - 1);
                const long right_lo = std::max(0L, kx + prev + 1);
                const long right_hi = std::min(n - 1, kx + tb);
                if (prev < 0) {
                    // single contiguous range through the center
                    long lo = left_lo;
                    long hi = right_hi;
                    if (lo <= hi) {
                        if (skip_center && sigma == 0.0) {
                            if (lo <= kx - 1) out.sums[b] += accumulate_range<src>(row, kx, lo, kx - 1, t0, t1, sigma, weight);
                            if (kx + 1 <= hi) out.sums[b] += accumulate_range<src>(row, kx, kx + 1, hi, t0, t1, sigma, weight);
                            out.counts[b] += static_cast<std::size_t>(hi - lo);
                        } else {
                            out.sums[b] += accumulate_range<src>(row, kx, lo, hi, t0, t1, sigma, weight);
                            out.counts[b] += static_cast<std::size_t>(hi - lo + 1);
                        }
                    }
                } else {
                    if (left_lo <= left_hi) {
                        out.sums[b] += accumulate_range<src>(row, kx, left_lo, left_hi, t0, t1, sigma, weight);
                        out.counts[b] += static_cast<std::size_t>(left_hi - left_lo + 1);
                    }
                    if (right_lo <= right_hi) {
                        out.sums[b] += accumulate_range<src>(row, kx, right_lo, right_hi, t0, t1, sigma, weight);
                        out.counts[b] += static_cast<std::size_t>(right_hi - right_lo + 1);
                    }
                }
                prev = tb;
            }
        }
    }
    return out;
}

// Terms of one half row with prefix sums taken from the row end toward the
// center, in blocks of 8 anchored at the row end. Terms sit at their row index;
// the right half is read backwards. prefix(j) depends only on the j outermost
// terms, never on which other prefixes are requested.
struct HalfRow {
    std::vector<double> re, im, block_re, block_im;
    long n = 0;
    long len = 0;
    bool reversed = false;

    HalfRow(long n_, bool reversed_)
        : re(static_cast<std::size_t>(n_)), im(static_cast<std::size_t>(n_)),
          block_re(static_cast<std::size_t>(n_) / 8 + 2), block_im(static_cast<std::size_t>(n_) / 8 + 2), n(n_),
          reversed(reversed_) {}

    long at(long u) const { return reversed ? n - 1 - u : u; }

    void build() {
        const long blocks = len / 8;
        block_re[0] = 0.0;
        block_im[0] = 0.0;
        for (long b = 0; b < blocks; ++b) {
            double r[8];
            double i[8];
            for (int k = 0; k < 8; ++k) {
                r[k] = re[at(8 * b + k)];
                i[k] = im[at(8 * b + k)];
            }
            block_re[b + 1] = block_re[b] + (((r[0] + r[1]) + (r[2] + r[3])) + ((r[4] + r[5]) + (r[6] + r[7])));
            block_im[b + 1] = block_im[b] + (((i[0] + i[1]) + (i[2] + i[3])) + ((i[4] + i[5]) + (i[6] + i[7])));
        }
    }

    cplx prefix(long j) const {
        const long b = j / 8;
        double sr = block_re[b];
        double si = block_im[b];
        for (long u = 8 * b; u < j; ++u) {
            sr += re[at(u)];
            si += im[at(u)];
        }
        return {sr, si};
    }
};

/*
 * Truncated sums for a whole ladder at once, computed so that the value at each
 * radius does not depend on the other radii: each row contributes the prefix sums
 * of its two halves taken from the row ends inward, and rows are added in a fixed
 * order per radius. Refining the ladder leaves the common values bit-identical,
 * so the maximal transform is exactly monotone under refinement.
 */
template <class W>
std::vector<cplx> row_profile(const Field& f, std::size_t x, std::span<const double> q, const W& weight) {
    const GridSpec& g = f.spec();
    const int dim = g.dim();
    const long n = static_cast<long>(g.points_per_axis());
    const MultiIndex xi = g.unravel(x);
    const std::size_t m = q.size();

    std::vector<cplx> acc(m, cplx{0.0, 0.0});
    std::vector<long> c(m);
    HalfRow left(n, false);
    HalfRow right(n, true);

    const long kx = static_cast<long>(xi[dim - 1]);
    const long rows0 = dim >= 2 ? n : 1;
    const long rows1 = dim >= 3 ? n : 1;
    const double* base = reinterpret_cast<const double*>(f.values().data());

    for (long r0 = 0; r0 < rows0; ++r0) {
        for (long r1 = 0; r1 < rows1; ++r1) {
            const double t0 = dim >= 2 ? static_cast<double>(static_cast<long>(xi[0]) - r0) : 0.0;
            const double t1 = dim >= 3 ? static_cast<double>(static_cast<long>(xi[1]) - r1) : 0.0;
            const double sigma = t0 * t0 + t1 * t1;
            const double* row = base + 2 * (r0 * rows1 + r1) * n;

            for (std::size_t b = 0; b < m; ++b) c[b] = isqrt_floor(q[b] - sigma);
            // cells with |i| <= c0 are inside every ball that reaches this row
            const long c0 = std::max(c[0], 0L);
            left.len = std::max(0L, kx - c0);
            right.len = std::max(0L, n - 1 - kx - c0);

            double* lre = left.re.data();
            double* lim = left.im.data();
#pragma omp simd
            for (long k = 0; k < left.len; ++k) {
                const double i = static_cast<double>(kx - k);
                double wr;
                double wi;
                weight(i, t0, t1, sigma + i * i, wr, wi);
                lre[k] = row[2 * k] * wr - row[2 * k + 1] * wi;
                lim[k] = row[2 * k] * wi + row[2 * k + 1] * wr;
            }
            double* rre = right.re.data();
            double* rim = right.im.data();
#pragma omp simd
            for (long k = n - right.len; k < n; ++k) {
                const double i = static_cast<double>(kx - k);
                double wr;
                double wi;
                weight(i, t0, t1, sigma + i * i, wr, wi);
                rre[k] = row[2 * k] * wr - row[2 * k + 1] * wi;
                rim[k] = row[2 * k] * wi + row[2 * k + 1] * wr;
            }
            left.build();
            right.build();

            for (std::size_t b = 0; b < m; ++b) {
                if (c[b] >= 0) {
                    acc[b] += left.prefix(std::max(0L, kx - c[b])) + right.prefix(std::max(0L, n - 1 - kx - c[b]));
                } else {
                    // the whole row lies outside the ball, center cell included
                    double wr;
                    double wi;
                    weight(0.0, t0, t1, sigma, wr, wi);
                    const cplx center{row[2 * kx] * wr - row[2 * kx + 1] * wi, row[2 * kx] * wi + row[2 * kx + 1] * wr};
                    acc[b] += (left.prefix(left.len) + right.prefix(right.len)) + center;
                }
            }
        }
    }
    return acc;
}

std::vector<double> squared_cell_radii(std::span<const double> radii, double h) {
    std::vector<double> q(radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double c = radii[k] / h;
        q[k] = c * c;
        // a radius meant to pass through lattice points must not lose them to rounding
        const double snapped = std::round(q[k]);
        if (std::abs(q[k] - snapped) <= 1e-9 * std::max(1.0, snapped)) q[k] = snapped;
    }
    return q;
}

void require_resolved(const GridSpec& g, double eps) {
    // small relative slack so that eps == diameter computed another way still passes
    if (eps < g.cell_diameter() * (1.0 - 1e-12)) {
        throw ResolutionError(fmt::format("truncation radius {} is below the cell diameter {}", eps, g.cell_diameter()));
    }
}

void require_kernel_dim(const KernelSpec& k, int dim) {
    if (k.kind == KernelKind::riesz) {
        if (k.axis < 1 || k.axis > dim) throw ConfigError(fmt::format("Riesz axis {} outside 1..{}", k.axis, dim));
    } else if (dim != 2) {
        throw ConfigError("Beurling and Cauchy kernels live in the plane (dim 2)");
    }
}

Shells kernel_shells(const Field& f, const KernelSpec& k, std::span<const double> q, std::size_t x) {
    const GridSpec& g = f.spec();
    require_kernel_dim(k, g.dim());
    switch (k.kind) {
    case KernelKind::riesz:
        switch (g.dim() * 10 + k.axis) {
        case 11: return shell_sums<Source::value>(f, x, q, RieszWeight<1, 1>{}, true);
        case 21: return shell_sums<Source::value>(f, x, q, RieszWeight<2, 1>{}, true);
        case 22: return shell_sums<Source::value>(f, x, q, RieszWeight<2, 2>{}, true);
        case 31: return shell_sums<Source::value>(f, x, q, RieszWeight<3, 1>{}, true);
        case 32: return shell_sums<Source::value>(f, x, q, RieszWeight<3, 2>{}, true);
        default: return shell_sums<Source::value>(f, x, q, RieszWeight<3, 3>{}, true);
        }
    case KernelKind::beurling:
        return shell_sums<Source::value>(f, x, q, BeurlingWeight{}, true);
    case KernelKind::cauchy:
        return shell_sums<Source::value>(f, x, q, CauchyWeight{g.spacing()}, true);
    }
    return {};
}

std::vector<cplx> kernel_profile(const Field& f, const KernelSpec& k, std::span<const double> q, std::size_t x) {
    const GridSpec& g = f.spec();
    require_kernel_dim(k, g.dim());
    switch (k.kind) {
    case KernelKind::riesz:
        switch (g.dim() * 10 + k.axis) {
        case 11: return row_profile(f, x, q, RieszWeight<1, 1>{});
        case 21: return row_profile(f, x, q, RieszWeight<2, 1>{});
        case 22: return row_profile(f, x, q, RieszWeight<2, 2>{});
        case 31: return row_profile(f, x, q, RieszWeight<3, 1>{});
        case 32: return row_profile(f, x, q, RieszWeight<3, 2>{});
        default: return row_profile(f, x, q, RieszWeight<3, 3>{});
        }
    case KernelKind::beurling:
        return row_profile(f, x, q, BeurlingWeight{});
    case KernelKind::cauchy:
        return row_profile(f, x, q, CauchyWeight{g.spacing()});
    }
    return {};
}

}  // namespace

std::vector<cplx> truncated_profile(const Field& f, const KernelSpec& k, const TruncationLadder& ladder,
                                    std::size_t x) {
    if (ladder.empty()) throw ConfigError("empty truncation ladder");
    const GridSpec& g = f.spec();
    for (double r : ladder.radii()) require_resolved(g, r);
    return kernel_profile(f, k, squared_cell_radii(ladder.radii(), g.spacing()), x);
}

cplx truncated_transform(const Field& f, const KernelSpec& k, double eps, std::size_t x) {
    return truncated_profile(f, k, TruncationLadder::from_radii({eps}), x).front();
}

double maximal_transform(const Field& f, const KernelSpec& k, const TruncationLadder& ladder, std::size_t x) {
    double best = 0.0;
    for (const auto& v : truncated_profile(f, k, ladder, x)) best = std::max(best, std::abs(v));
    return best;
}

cplx principal_value(const Field& f, const KernelSpec& k, std::size_t x) {
    const std::vector<double> q{0.0};
    const Shells sh = kernel_shells(f, k, q, x);
    return sh.sums[1];
}

cplx cauchy_transform(const Field& f, std::size_t x) { return principal_value(f, KernelSpec::cauchy(), x); }

BallAverages ball_averages(const Field& g, const TruncationLadder& ladder, std::size_t x) {
    if (ladder.empty()) throw ConfigError("empty radius ladder");
    const GridSpec& spec = g.spec();
    for (double r : ladder.radii()) require_resolved(spec, r);
    const auto q = squared_cell_radii(ladder.radii(), spec.spacing());
    const Shells plain = shell_sums<Source::value>(g, x, q, UnitWeight{}, false);
    const Shells mags = shell_sums<Source::magnitude>(g, x, q, UnitWeight{}, false);

    BallAverages out;
    out.radii.assign(ladder.radii().begin(), ladder.radii().end());
    cplx acc{0.0, 0.0};
    double acc_abs = 0.0;
    std::size_t count = 0;
    for (std::size_t b = 0; b < ladder.size(); ++b) {
        acc += plain.sums[b];
        acc_abs += mags.sums[b].real();
        count += plain.counts[b];
        if (count == 0) throw Error("empty ball in ball average");
        out.mean.push_back(acc / static_cast<double>(count));
        out.mean_abs.push_back(acc_abs / static_cast<double>(count));
        out.counts.push_back(count);
    }
    return out;
}

double hl_maximal(const Field& f, const TruncationLadder& ladder, std::size_t x) {
    const BallAverages avg = ball_averages(f, ladder, x);
    return *std::max_element(avg.mean_abs.begin(), avg.mean_abs.end());
}

cplx disc_average(const Field& g, std::size_t z, double eps) {
    if (g.spec().dim() != 2) throw ConfigError("disc averages are taken in the plane (dim 2)");
    return ball_averages(g, TruncationLadder::from_radii({eps}), z).mean.front();
}

}  // namespace sing
