#include "sing/cli.hpp"

#include <functional>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sing/checks.hpp"
#include "sing/config.hpp"
#include "sing/error.hpp"

namespace sing {

namespace {

using Command = std::function<CommandReport(const RunConfig&)>;

const std::vector<std::pair<std::string, Command>>& commands() {
    static const std::vector<std::pair<std::string, Command>> list{
        {"verify-beurling-identity", cmd_verify_beurling_identity},
        {"verify-cotlar", cmd_verify_cotlar},
        {"verify-theorem1", cmd_verify_theorem1},
        {"run-counterexample", cmd_run_counterexample},
        {"verify-potentials", cmd_verify_potentials},
    };
    return list;
}

const char* description(const std::string& name) {
    if (name == "verify-beurling-identity") return "B(chi_D) against 1/z^2 and the Cauchy route";
    if (name == "verify-cotlar") return "B* f <= M(Bf) battery and the disc-averaging identity";
    if (name == "verify-theorem1") return "maximal Riesz transforms against R_j f in L^p and pointwise";
    if (name == "run-counterexample") return "weak-L1 growth of R_1* f_eps and the l1 budget";
    if (name == "verify-potentials") return "h and p: defining identity, decay, c0 fit, log band";
    return "every command above in order";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks for singular integrals", "singtool"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    bool plots = false;
    bool dump = false;
    app.add_option("--config", config_path, "flat key = value file")->check(CLI::ExistingFile);
    app.add_flag("--plots", plots, "also write SVG plots");
    app.add_flag("--dump-config", dump, "print the effective configuration before running");

    std::map<std::string, std::string> overrides;
    std::map<std::string, CLI::Option*> options;
    for (const ConfigKey& k : config_keys()) {
        if (k.name == "plots") continue;
        options[k.name] = app.add_option("--" + k.name, overrides[k.name], k.help)->group("Config keys");
    }

    std::vector<std::string> selected;
    for (const auto& [name, fn] : commands()) {
        app.add_subcommand(name, description(name))->callback([&selected, n = name] { selected.push_back(n); });
    }
    app.add_subcommand("all", description("all"))->callback([&selected] {
        for (const auto& c : commands()) selected.push_back(c.first);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "singtool: " << e.what() << "\n";
        return 2;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        apply_environment(cfg);
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) set_config_value(cfg, key, overrides[key]);
        }
        if (plots) cfg.plots = true;
        validate(cfg);
    } catch (const Error& e) {
        err << "singtool: " << e.what() << "\n";
        return 2;
    }
    if (dump) out << dump_config(cfg);

    bool pass = true;
    for (const std::string& name : selected) {
        const auto it = std::find_if(commands().begin(), commands().end(), [&](const auto& c) { return c.first == name; });
        try {
            const CommandReport report = it->second(cfg);
            out << format_report(report) << std::flush;
            pass = pass && report.passed();
        } catch (const ConfigError& e) {
            err << fmt::format("singtool {}: configuration error: {}\n", name, e.what());
            return 2;
        } catch (const ResolutionError& e) {
            err << fmt::format("singtool {}: resolution error: {}\n", name, e.what());
            return 2;
        } catch (const Error& e) {
            err << fmt::format("singtool {}: {}\n", name, e.what());
            return 1;
        }
    }
    return pass ? 0 : 1;
}

}  // namespace sing
