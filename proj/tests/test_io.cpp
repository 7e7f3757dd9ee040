#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "phasefront/config.hpp"
#include "phasefront/csv_io.hpp"
#include "phasefront/diagnostics.hpp"
#include "support.hpp"

using namespace phasefront;
using testsupport::reference_law;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("config parsing, defaults and validation") {
    write_file("cfg_ok.txt",
               "# reference material\n"
               "material.k1 = 4\n"
               "material.k3 = 1\n"
               "material.wM = 1\n"
               "material.wm = 2\n"
               "grid.h = 0.02\n"
               "time.t_end = 1\n");
    const ExperimentConfig cfg = ExperimentConfig::parse_file("cfg_ok.txt");
    const MaterialLaw law = make_material(cfg);
    CHECK(law.wMcr() == 1.0);  // defaults to the phase knot
    CHECK(law.wmcr() == 2.0);
    const GlimmConfig g = make_glimm_config(cfg, law);
    CHECK(g.h == 0.02);
    CHECK(g.lambda == doctest::Approx(law.c1() / 0.9));
    std::remove("cfg_ok.txt");

    write_file("cfg_bad.txt",
               "material.k1 = 4\nmaterial.k3 = 5\n"
               "material.wM = 1\nmaterial.wm = 2\n");
    const ExperimentConfig bad = ExperimentConfig::parse_file("cfg_bad.txt");
    CHECK_THROWS_WITH_AS(make_material(bad),
                         doctest::Contains("k3 < k1"),
                         std::invalid_argument);
    std::remove("cfg_bad.txt");

    write_file("cfg_dup.txt", "grid.h = 0.1\ngrid.h = 0.2\n");
    CHECK_THROWS_WITH_AS(ExperimentConfig::parse_file("cfg_dup.txt"),
                         doctest::Contains("lines 1 and 2"),
                         std::invalid_argument);
    std::remove("cfg_dup.txt");

    write_file("cfg_unknown.txt", "grid.spacing = 0.1\n");
    CHECK_THROWS_WITH_AS(ExperimentConfig::parse_file("cfg_unknown.txt"),
                         doctest::Contains("unknown key"),
                         std::invalid_argument);
    std::remove("cfg_unknown.txt");

    write_file("cfg_nokv.txt", "material.k1\n");
    CHECK_THROWS_AS(ExperimentConfig::parse_file("cfg_nokv.txt"),
                    std::invalid_argument);
    std::remove("cfg_nokv.txt");
}

TEST_CASE("config echo round-trips") {
    const ExperimentConfig cfg = ExperimentConfig::from_pairs({
        {"material.k1", "4"},
        {"material.k3", "1"},
        {"material.wM", "1"},
        {"material.wm", "2"},
        {"grid.h", "0.017"},
        {"time.t_end", "0.9"},
        {"init.type", "pure_boundary"},
        {"init.Vstar", "0.3"},
    });
    write_file("cfg_echo.txt", cfg.echo());
    const ExperimentConfig back = ExperimentConfig::parse_file("cfg_echo.txt");
    CHECK(back.entries() == cfg.entries());
    std::remove("cfg_echo.txt");
}

TEST_CASE("CSV writers are deterministic and shaped as documented") {
    const MaterialLaw law = reference_law();
    const KineticFunction kf = KineticFunction::max_dissipation(law);
    const auto [uL, uR] = pure_boundary_states(law, kf, 0.3);
    GlimmConfig cfg;
    cfg.h = 0.05;
    cfg.t_end = 0.5;
    cfg.xmin = -3.2;
    cfg.xmax = 3.2;

    const GlimmRun run1 =
        glimm_run(law, kf, PiecewiseInitial::riemann(uL, uR), cfg);
    const GlimmRun run2 =
        glimm_run(law, kf, PiecewiseInitial::riemann(uL, uR), cfg);

    write_snapshot(run1, {0.0, 0.25}, "snap1.csv");
    write_snapshot(run2, {0.0, 0.25}, "snap2.csv");
    write_track(run1, "track1.csv");
    write_track(run2, "track2.csv");
    write_diag(per_level_diagnostics(run1, 64.0), "diag1.csv");
    write_diag(per_level_diagnostics(run2, 64.0), "diag2.csv");

    CHECK(slurp("snap1.csv") == slurp("snap2.csv"));
    CHECK(slurp("track1.csv") == slurp("track2.csv"));
    CHECK(slurp("diag1.csv") == slurp("diag2.csv"));

    // track rows = number of time levels + 1 (header)
    {
        std::ifstream in("track1.csv");
        std::string line;
        std::size_t rows = 0;
        std::getline(in, line);
        CHECK(line == "n,t,chi,chidot,a_n");
        while (std::getline(in, line)) ++rows;
        CHECK(rows == run1.levels.size());
    }

    // snapshot at t = 0: two constant blocks split at x = 0
    {
        std::ifstream in("snap1.csv");
        std::string line;
        std::getline(in, line);
        int left = 0, right = 0;
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string tok;
            std::getline(row, tok, ',');
            if (std::stod(tok) != 0.0) continue;
            std::getline(row, tok, ',');
            const double x = std::stod(tok);
            std::getline(row, tok, ',');
            const double v = std::stod(tok);
            if (x < 0.0) {
                CHECK(v == uL.v);
                ++left;
            } else {
                CHECK(v == uR.v);
                ++right;
            }
        }
        CHECK(left > 10);
        CHECK(right > 10);
    }

    for (const char* f : {"snap1.csv", "snap2.csv", "track1.csv",
                          "track2.csv", "diag1.csv", "diag2.csv"})
        std::remove(f);
}

TEST_CASE("full float precision round-trips through the text form") {
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
    CHECK(std::stod(format_double(-1.0 / 3.0)) == -1.0 / 3.0);
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("fan sampling CSV") {
    const MaterialLaw law = reference_law();
    const KineticFunction kf = KineticFunction::max_dissipation(law);
    const WaveFan fan = solve_riemann(law, kf, {0.0, 0.5}, {-0.5, 2.5});
    write_fan_samples(law, fan, 0.5, -2.0, 2.0, 100, "fan.csv");
    std::ifstream in("fan.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,v,w,phase");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 100);
    std::remove("fan.csv");
}
