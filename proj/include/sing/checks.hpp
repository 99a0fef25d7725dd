#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sing/config.hpp"

namespace sing {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double limit = 0.0;
    std::string detail;
};

struct CommandReport {
    std::string command;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;
    std::vector<std::filesystem::path> files;

    bool passed() const;
    // Throws Error when no check has this name.
    const CheckResult& check(std::string_view name) const;
};

// Each command writes <out_dir>/<command>.csv (and .svg plots when enabled).
CommandReport cmd_verify_beurling_identity(const RunConfig& cfg);
CommandReport cmd_verify_cotlar(const RunConfig& cfg);
CommandReport cmd_verify_theorem1(const RunConfig& cfg);
CommandReport cmd_run_counterexample(const RunConfig& cfg);
CommandReport cmd_verify_potentials(const RunConfig& cfg);

std::string format_report(const CommandReport& report);

}  // namespace sing
