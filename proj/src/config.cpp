#include "sing/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>

#include "sing/error.hpp"
#include "sing/report.hpp"

namespace sing {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(fmt::format("config key '{}': cannot parse '{}'", key, text));
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    throw ConfigError(fmt::format("config key '{}': expected a boolean, got '{}'", key, text));
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<double>(key, item));
    return out;
}

std::string show(double v) { return format_double(v); }
std::string show(std::size_t v) { return std::to_string(v); }
std::string show(std::uint64_t v, int) { return std::to_string(v); }
std::string show(int v) { return std::to_string(v); }
std::string show(bool v) { return v ? "true" : "false"; }
std::string show(const std::string& v) { return v; }
std::string show(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ',';
        s += format_double(v[k]);
    }
    return s;
}

void assign(double& m, const std::string& k, const std::string& v) { m = parse_number<double>(k, v); }
void assign(std::size_t& m, const std::string& k, const std::string& v) { m = parse_number<std::size_t>(k, v); }
void assign(int& m, const std::string& k, const std::string& v) { m = parse_number<int>(k, v); }
void assign(bool& m, const std::string& k, const std::string& v) { m = parse_bool(k, v); }
void assign(std::string& m, const std::string&, const std::string& v) { m = trim(v); }
void assign(std::vector<double>& m, const std::string& k, const std::string& v) { m = parse_list(k, v); }

struct Binding {
    ConfigKey key;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <class T>
Binding bind(const char* name, T RunConfig::*member, const char* help) {
    const std::string n = name;
    return {{n, help},
            [member, n](RunConfig& c, const std::string& v) { assign(c.*member, n, v); },
            [member](const RunConfig& c) { return show(c.*member); }};
}

Binding bind_seed() {
    return {{"seed", "seed for the random test batteries"},
            [](RunConfig& c, const std::string& v) { c.seed = parse_number<std::uint64_t>("seed", v); },
            [](const RunConfig& c) { return show(c.seed, 0); }};
}

const std::vector<Binding>& bindings() {
    static const std::vector<Binding> table{
        bind("half_width", &RunConfig::half_width, "box half-width L of the 2-D grid"),
        bind("points", &RunConfig::points, "points per axis N of the 2-D grid"),
        bind("refine_points", &RunConfig::refine_points, "points per axis of the refinement grid"),
        bind("padding", &RunConfig::padding, "zero-padding factor for spectral transforms compared with quadrature"),
        bind("subsamples", &RunConfig::subsamples, "cell-average subsamples per axis for discontinuous data"),
        bind_seed(),
        bind("out_dir", &RunConfig::out_dir, "output directory (SINGTOOL_OUT overrides the file value)"),
        bind("plots", &RunConfig::plots, "also write SVG plots"),
        bind("beurling_inner", &RunConfig::beurling_inner, "inner radius of the closed-form comparison annulus"),
        bind("beurling_outer", &RunConfig::beurling_outer, "outer radius of the closed-form comparison annulus"),
        bind("tol_beurling", &RunConfig::tol_beurling, "sup error limit for B(chi_D) against 1/z^2"),
        bind("cauchy_points", &RunConfig::cauchy_points, "sample points for the Cauchy-transform route"),
        bind("cotlar_fields", &RunConfig::cotlar_fields, "smooth random fields in the Cotlar battery"),
        bind("cotlar_points", &RunConfig::cotlar_points, "sampled points per field"),
        bind("sample_radius", &RunConfig::sample_radius, "sampled points satisfy |z| <= sample_radius"),
        bind("ladder_eps0", &RunConfig::ladder_eps0, "smallest radius of the Cotlar ladder"),
        bind("ladder_ratio", &RunConfig::ladder_ratio, "ratio of the Cotlar ladder"),
        bind("ladder_count", &RunConfig::ladder_count, "radii in the Cotlar ladder"),
        bind("tol_cotlar", &RunConfig::tol_cotlar, "relative slack in B*f <= (1 + tol) M(Bf)"),
        bind("disc_fields", &RunConfig::disc_fields, "fields used for the disc-average identity"),
        bind("disc_points", &RunConfig::disc_points, "sampled points per field and radius"),
        bind("disc_radii", &RunConfig::disc_radii, "truncation radii for the disc-average identity"),
        bind("tol_disc", &RunConfig::tol_disc, "absolute limit for the disc-average identity residual"),
        bind("theorem1_fields", &RunConfig::theorem1_fields, "smooth random fields in the maximal Riesz battery"),
        bind("theorem1_stride", &RunConfig::theorem1_stride, "grid stride of the points where R_j* is evaluated"),
        bind("theorem1_ladder_ratio", &RunConfig::theorem1_ladder_ratio, "ratio of the ladder starting at 2h"),
        bind("theorem1_ratio_cap", &RunConfig::theorem1_ratio_cap, "cap on ||R_j* f||_p / ||R_j f||_p"),
        bind("theorem1_cs_cap", &RunConfig::theorem1_cs_cap, "cap on the fitted pointwise constant C_2"),
        bind("line_half_width", &RunConfig::line_half_width, "half-width of the 1-D grid"),
        bind("line_points", &RunConfig::line_points, "points of the 1-D grid"),
        bind("tol_h_residual", &RunConfig::tol_h_residual, "limit for |R_1 h - chi K_1| away from the sphere"),
        bind("tol_decay_change", &RunConfig::tol_decay_change, "relative change allowed in sup |h||x|^(n+1)"),
        bind("tol_b_change", &RunConfig::tol_b_change, "relative change allowed in c0 and b_sup under refinement"),
        bind("boundary_tolerance", &RunConfig::boundary_tolerance, "largest kernel size on the box boundary for h"),
        bind("band_low", &RunConfig::band_low, "lower band factor on min p/log(1/d)"),
        bind("band_high", &RunConfig::band_high, "upper band factor on max p/log(1/d)"),
        bind("band_dmin", &RunConfig::band_dmin, "smallest distance to the sphere in the band check"),
        bind("band_dmax", &RunConfig::band_dmax, "largest distance to the sphere in the band check"),
        bind("band_samples", &RunConfig::band_samples, "log-spaced distances per side of the sphere"),
        bind("band_refinements", &RunConfig::band_refinements, "node-count doublings in the band check"),
        bind("potentials_dim3", &RunConfig::potentials_dim3, "also run the n = 3 potentials"),
        bind("dim3_points", &RunConfig::dim3_points, "points per axis of the n = 3 h grid"),
        bind("sweep_eps", &RunConfig::sweep_eps, "mollifier widths of the counterexample sweep"),
        bind("sweep_half_width", &RunConfig::sweep_half_width, "half-width of each sweep grid"),
        bind("sweep_cells_per_eps", &RunConfig::sweep_cells_per_eps, "sweep grid spacing is eps / this"),
        bind("sweep_max_points", &RunConfig::sweep_max_points, "per-axis cap on sweep grids"),
        bind("sweep_ladder_eps0", &RunConfig::sweep_ladder_eps0, "smallest radius of the sweep ladder"),
        bind("sweep_ladder_ratio", &RunConfig::sweep_ladder_ratio, "ratio of the sweep ladder"),
        bind("sweep_ladder_count", &RunConfig::sweep_ladder_count, "radii in the sweep ladder"),
        bind("sweep_base_spacing", &RunConfig::sweep_base_spacing, "side of the coarsest evaluation cells"),
        bind("lambda_count", &RunConfig::lambda_count, "lambda values in the weak-norm grid"),
        bind("lambda_min", &RunConfig::lambda_min, "smallest lambda"),
        bind("budget", &RunConfig::budget, "limit on ||R_1 f_eps||_1"),
        bind("weak_multiple", &RunConfig::weak_multiple, "multiple of ||R_1 f_eps||_1 the weak norm must exceed at the smallest eps"),
        bind("r2_min", &RunConfig::r2_min, "minimum r^2 of the log-growth fit"),
        bind("monotone_slack", &RunConfig::monotone_slack, "relative noise floor for the monotone weak-norm column"),
        bind("eta", &RunConfig::eta, "exponent of the window 4 <= delta <= eps^-eta"),
        bind("axis_deltas", &RunConfig::axis_deltas, "distances |x - b| of the axis spot check"),
        bind("axis_half_width", &RunConfig::axis_half_width, "half-width of the axis spot-check grids"),
    };
    return table;
}

const Binding& find(const std::string& key) {
    for (const auto& b : bindings()) {
        if (b.key.name == key) return b;
    }
    throw ConfigError(fmt::format("unknown config key '{}'", key));
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        for (const auto& b : bindings()) k.push_back(b.key);
        return k;
    }();
    return keys;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) { find(key).set(cfg, value); }

std::string get_config_value(const RunConfig& cfg, const std::string& key) { return find(key).get(cfg); }

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("{}:{}: expected 'key = value'", origin, lineno));
        try {
            set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("{}:{}: {}", origin, lineno, e.what()));
        }
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config file {}", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str(), path.string());
}

void apply_environment(RunConfig& cfg) {
    if (const char* env = std::getenv("SINGTOOL_OUT"); env && *env) cfg.out_dir = env;
}

void validate(const RunConfig& c) {
    auto positive = [](const char* name, double v) {
        if (!(v > 0.0)) throw ConfigError(fmt::format("{} must be positive (got {})", name, v));
    };
    positive("half_width", c.half_width);
    positive("tol_beurling", c.tol_beurling);
    positive("tol_cotlar", c.tol_cotlar);
    positive("tol_disc", c.tol_disc);
    positive("theorem1_ratio_cap", c.theorem1_ratio_cap);
    positive("theorem1_cs_cap", c.theorem1_cs_cap);
    positive("tol_h_residual", c.tol_h_residual);
    positive("tol_decay_change", c.tol_decay_change);
    positive("tol_b_change", c.tol_b_change);
    positive("boundary_tolerance", c.boundary_tolerance);
    positive("band_low", c.band_low);
    positive("band_high", c.band_high);
    positive("budget", c.budget);
    positive("weak_multiple", c.weak_multiple);
    positive("r2_min", c.r2_min);
    positive("monotone_slack", c.monotone_slack);
    positive("eta", c.eta);
    positive("lambda_min", c.lambda_min);
    positive("sample_radius", c.sample_radius);
    if (c.refine_points <= c.points) throw ConfigError("refine_points must exceed points");
    if (c.padding < 1) throw ConfigError("padding must be at least 1");
    if (c.subsamples < 1) throw ConfigError("subsamples must be at least 1");
    if (c.sweep_eps.empty() || c.disc_radii.empty() || c.axis_deltas.empty()) {
        throw ConfigError("sweep_eps, disc_radii and axis_deltas must be non-empty");
    }
    if (!(c.band_dmin > 0.0 && c.band_dmax > c.band_dmin && c.band_dmax < 1.0)) {
        throw ConfigError("band distances must satisfy 0 < band_dmin < band_dmax < 1");
    }
    if (c.theorem1_stride == 0 || c.lambda_count == 0 || c.band_samples < 2) {
        throw ConfigError("theorem1_stride, lambda_count must be positive and band_samples at least 2");
    }
    if (c.out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

std::string dump_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& b : bindings()) out += b.key.name + " = " + b.get(cfg) + "\n";
    return out;
}

}  // namespace sing
