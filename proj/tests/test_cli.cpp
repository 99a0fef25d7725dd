#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sing/cli.hpp"

using namespace sing;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "singtool");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("singtool_cli_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

// small Beurling run: N = 128 / 256 on [-8, 8)^2
std::vector<std::string> small_beurling(const std::filesystem::path& out) {
    return {"verify-beurling-identity", "--points", "128", "--refine_points", "256", "--out_dir", out.string()};
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"verify-cotlar", "--no_such_key", "1"}).code == 2);
    CHECK(run({"verify-cotlar", "--points", "abc"}).code == 2);
    CHECK(run({"verify-cotlar", "--config", "/nonexistent.cfg"}).code == 2);
    CHECK(run({"verify-cotlar", "--tol_cotlar", "-1"}).code == 2);
}

TEST_CASE("help exits with 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("pass and breach exit codes") {
    const auto dir = scratch("codes");
    auto args = small_beurling(dir);
    args.insert(args.end(), {"--tol_beurling", "0.5"});
    const Run ok = run(args);
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS sup_error_N128") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "verify-beurling-identity.csv"));

    auto strict = small_beurling(dir);
    strict.insert(strict.end(), {"--tol_beurling", "1e-9"});
    const Run bad = run(strict);
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unresolvable grids exit with 2") {
    const auto dir = scratch("resolution");
    // ladder starts below one cell diameter of the N = 128 grid
    const Run r = run({"verify-cotlar", "--points", "128", "--refine_points", "256", "--ladder_eps0", "0.01",
                       "--out_dir", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("resolution") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("precedence: file, then SINGTOOL_OUT, then flags") {
    const auto base = scratch("precedence");
    std::filesystem::create_directories(base);
    const auto cfg = base / "run.cfg";
    std::ofstream(cfg) << "points = 128\nrefine_points = 256\ntol_beurling = 0.5\nout_dir = " << (base / "from_file").string()
                       << "\n";

    CHECK(run({"verify-beurling-identity", "--config", cfg.string()}).code == 0);
    CHECK(std::filesystem::exists(base / "from_file" / "verify-beurling-identity.csv"));

    setenv("SINGTOOL_OUT", (base / "from_env").string().c_str(), 1);
    CHECK(run({"verify-beurling-identity", "--config", cfg.string()}).code == 0);
    CHECK(std::filesystem::exists(base / "from_env" / "verify-beurling-identity.csv"));

    CHECK(run({"verify-beurling-identity", "--config", cfg.string(), "--out_dir", (base / "from_flag").string(),
               "--plots"})
              .code == 0);
    CHECK(std::filesystem::exists(base / "from_flag" / "verify-beurling-identity.csv"));
    CHECK(std::filesystem::exists(base / "from_flag" / "verify-beurling-identity_refinement.svg"));
    unsetenv("SINGTOOL_OUT");

    const Run dumped = run({"verify-beurling-identity", "--config", cfg.string(), "--points", "256",
                            "--refine_points", "512", "--out_dir", (base / "dump").string(), "--dump-config"});
    CHECK(dumped.out.find("points = 256\n") != std::string::npos);
    std::filesystem::remove_all(base);
}
