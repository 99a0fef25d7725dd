#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sing/error.hpp"
#include "sing/report.hpp"

using namespace sing;

TEST_CASE("doubles print as shortest round-trip decimals") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1e-300) == "1e-300");
    const double x = 1.0 / 3.0;
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("csv layout and quoting") {
    CsvTable t({"a", "b", "c"});
    t.add_row({1.5, std::size_t{3}, std::string("x,y")});
    t.add_row({std::string("say \"hi\""), true, -2LL});
    CHECK(t.str() == "a,b,c\n1.5,3,\"x,y\"\n\"say \"\"hi\"\"\",1,-2\n");
    CHECK_THROWS_AS(t.add_row({1.0}), Error);
}

TEST_CASE("atomic write replaces the file and leaves no temporary") {
    const auto dir = std::filesystem::temp_directory_path() / "sing_report_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    write_atomic(path, "first\n");
    write_atomic(path, "second\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second\n");
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("svg is self-contained") {
    PlotSpec p{"t", "x", "y", true, true, {{"s", {1.0, 10.0, 100.0}, {1.0, 2.0, 4.0}}}};
    const std::string svg = render_svg(p);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
}
