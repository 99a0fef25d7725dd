#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "sing/grid.hpp"

namespace sing {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DistributionRecord {
    double lambda = 0.0;
    double superlevel_measure = 0.0;  // measure of {|f| > lambda}
};

// (integral of |f|^p)^(1/p) by the midpoint rule; max |f| for p = infinity.
// Throws ConfigError for p < 1.
double lp_norm(const Field& f, double p);

// Superlevel measures with strict inequality; lambdas must be positive and ascending.
std::vector<DistributionRecord> distribution(const Field& f, std::span<const double> lambdas);
double weak_quasinorm(const Field& f, std::span<const double> lambdas);

// Same quantities for a weighted point cloud: each sample stands for a region
// of measure weights[i] on which |f| is taken to equal values[i].
std::vector<DistributionRecord> distribution(std::span<const double> values, std::span<const double> weights,
                                             std::span<const double> lambdas);
double weak_quasinorm(std::span<const double> values, std::span<const double> weights,
                      std::span<const double> lambdas);

// `count` logarithmically spaced values from lo to hi inclusive.
std::vector<double> log_lambda_grid(double lo, double hi, std::size_t count);

}  // namespace sing
