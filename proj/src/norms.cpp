#include "sing/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace sing {

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw ConfigError(fmt::format("Lp norm needs p >= 1 (got {})", p));
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.spec().cell_volume(), 1.0 / p);
}

namespace {

void check_lambdas(std::span<const double> lambdas) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw ConfigError("lambda grid must be positive");
        if (i > 0 && lambdas[i] < lambdas[i - 1]) throw ConfigError("lambda grid must be ascending");
    }
}

}  // namespace

std::vector<DistributionRecord> distribution(std::span<const double> values, std::span<const double> weights,
                                             std::span<const double> lambdas) {
    if (values.size() != weights.size()) throw Error("values and weights differ in length");
    check_lambdas(lambdas);

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> sorted(values.size());
    std::vector<double> tail(values.size() + 1, 0.0);  // tail[k] = weight of sorted[k..]
    for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = values[order[k]];
    for (std::size_t k = order.size(); k-- > 0;) tail[k] = tail[k + 1] + weights[order[k]];

    std::vector<DistributionRecord> out;
    out.reserve(lambdas.size());
    for (double lam : lambdas) {
        const auto first_above = std::upper_bound(sorted.begin(), sorted.end(), lam) - sorted.begin();
        out.push_back({lam, tail[static_cast<std::size_t>(first_above)]});
    }
    return out;
}

double weak_quasinorm(std::span<const double> values, std::span<const double> weights,
                      std::span<const double> lambdas) {
    double best = 0.0;
    for (const auto& rec : distribution(values, weights, lambdas)) {
        best = std::max(best, rec.lambda * rec.superlevel_measure);
    }
    return best;
}

namespace {

std::vector<double> magnitudes(const Field& f) {
    std::vector<double> m(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) m[i] = std::abs(f[i]);
    return m;
}

}  // namespace

std::vector<DistributionRecord> distribution(const Field& f, std::span<const double> lambdas) {
    const auto m = magnitudes(f);
    const std::vector<double> w(m.size(), f.spec().cell_volume());
    return distribution(m, w, lambdas);
}

double weak_quasinorm(const Field& f, std::span<const double> lambdas) {
    const auto m = magnitudes(f);
    const std::vector<double> w(m.size(), f.spec().cell_volume());
    return weak_quasinorm(m, w, lambdas);
}

std::vector<double> log_lambda_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
        throw ConfigError(fmt::format("bad lambda grid [{}, {}] x {}", lo, hi, count));
    }
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = std::log(hi / lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) out[k] = lo * std::exp(step * static_cast<double>(k));
    out.back() = hi;
    return out;
}

}  // namespace sing
