#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sing/config.hpp"
#include "sing/error.hpp"

using namespace sing;

TEST_CASE("every key round-trips through its text form") {
    RunConfig a;
    RunConfig b;
    b.half_width = 1.0;  // make sure the copy really comes from the text
    for (const ConfigKey& k : config_keys()) set_config_value(b, k.name, get_config_value(a, k.name));
    CHECK(dump_config(a) == dump_config(b));
}

TEST_CASE("config text parsing") {
    RunConfig cfg;
    apply_config_text(cfg, "# comment\npoints = 256   # trailing\n\nsweep_eps = 0.5, 0.25\nplots = yes\n");
    CHECK(cfg.points == 256);
    CHECK(cfg.sweep_eps == std::vector<double>{0.5, 0.25});
    CHECK(cfg.plots);
    CHECK_THROWS_AS(apply_config_text(cfg, "nosuchkey = 1"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "points 12"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "points = 12x"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(cfg, "plots = maybe"), ConfigError);
    CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent/singtool.cfg"), ConfigError);
}

TEST_CASE("config errors name the line") {
    RunConfig cfg;
    try {
        apply_config_text(cfg, "points = 1\nbogus = 2\n", "run.cfg");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("run.cfg:2") != std::string::npos);
    }
}

TEST_CASE("validation") {
    RunConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.tol_cotlar = 0.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.refine_points = cfg.points;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg = {};
    cfg.band_dmax = 1.5;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("SINGTOOL_OUT replaces out_dir") {
    RunConfig cfg;
    setenv("SINGTOOL_OUT", "/tmp/elsewhere", 1);
    apply_environment(cfg);
    CHECK(cfg.out_dir == "/tmp/elsewhere");
    setenv("SINGTOOL_OUT", "", 1);
    cfg.out_dir = "kept";
    apply_environment(cfg);
    CHECK(cfg.out_dir == "kept");
    unsetenv("SINGTOOL_OUT");
}
