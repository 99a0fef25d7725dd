#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace sing {

/// Every tunable of the verification harness. Keys in the config file and on
/// the command line use the member names.
struct RunConfig {
    // shared grid (n = 2 desk scale)
    double half_width = 8.0;
    std::size_t points = 512;
    std::size_t refine_points = 1024;
    int padding = 2;
    int subsamples = 8;
    std::uint64_t seed = 20240611;
    std::string out_dir = "singtool_out";
    bool plots = false;

    // Beurling closed form
    double beurling_inner = 1.1;
    double beurling_outer = 4.0;
    double tol_beurling = 0.05;
    std::size_t cauchy_points = 32;

    // Cotlar battery and disc identity
    std::size_t cotlar_fields = 10;
    std::size_t cotlar_points = 200;
    double sample_radius = 3.0;
    double ladder_eps0 = 0.0625;
    double ladder_ratio = 1.4;
    std::size_t ladder_count = 12;
    double tol_cotlar = 0.01;
    std::size_t disc_fields = 3;
    std::size_t disc_points = 100;
    std::vector<double> disc_radii{0.25, 0.5, 1.0};
    double tol_disc = 0.01;

    // Theorem 1
    std::size_t theorem1_fields = 4;
    std::size_t theorem1_stride = 8;
    double theorem1_ladder_ratio = 1.4;
    double theorem1_ratio_cap = 10.0;
    double theorem1_cs_cap = 20.0;
    double line_half_width = 32.0;
    std::size_t line_points = 2048;

    // potentials
    double tol_h_residual = 0.05;
    double tol_decay_change = 0.2;
    double tol_b_change = 0.2;
    double boundary_tolerance = 0.02;
    double band_low = 0.5;
    double band_high = 2.0;
    double band_dmin = 1e-4;
    double band_dmax = 0.4;
    std::size_t band_samples = 25;
    std::size_t band_refinements = 3;
    bool potentials_dim3 = false;
    std::size_t dim3_points = 64;

    // counterexample sweep
    std::vector<double> sweep_eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    double sweep_half_width = 4.0;
    double sweep_cells_per_eps = 4.0;
    std::size_t sweep_max_points = 4096;
    double sweep_ladder_eps0 = 0.0625;
    double sweep_ladder_ratio = 1.25;
    std::size_t sweep_ladder_count = 24;
    double sweep_base_spacing = 0.125;
    std::size_t lambda_count = 64;
    double lambda_min = 1e-4;
    double budget = 2.02;
    double weak_multiple = 0.9;
    double r2_min = 0.9;
    double monotone_slack = 1e-3;
    double eta = 0.25;
    std::vector<double> axis_deltas{4.0, 5.0, 6.0, 7.0, 8.0};
    double axis_half_width = 10.0;
};

struct ConfigKey {
    std::string name;
    std::string help;
};

// All keys with a one-line description, in documentation order.
const std::vector<ConfigKey>& config_keys();

// Assigns one key from its text form. Throws ConfigError on unknown keys or
// malformed values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const RunConfig& cfg, const std::string& key);

// Flat "key = value" lines; '#' starts a comment. Throws ConfigError.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "<text>");

// SINGTOOL_OUT, when set and non-empty, replaces out_dir.
void apply_environment(RunConfig& cfg);

// Rejects non-positive tolerances, empty lists and inconsistent grids.
void validate(const RunConfig& cfg);

// Every key as "key = value", one per line.
std::string dump_config(const RunConfig& cfg);

}  // namespace sing
