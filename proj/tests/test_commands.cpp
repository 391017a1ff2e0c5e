#include "wsbr/commands.hpp"
#include "wsbr/errors.hpp"
#include "wsbr/figures.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wsbr;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("wsbr_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::ostringstream o;
    o << f.rdbuf();
    return o.str();
}

}  // namespace

TEST_SUITE("commands")
{
    TEST_CASE("eval emits the grid and matches library calls")
    {
        RunConfig cfg;
        const Table t = cmd_eval(cfg, "g2");
        REQUIRE(t.rows.size() == 1001);
        CHECK(t.rows.front()[0] == 0.0);
        CHECK(t.rows.back()[0] == 1.0);
        const Roughness r = cfg.roughness();
        for (std::size_t i = 0; i < t.rows.size(); i += 97) {
            const BoundedValue v = eval_g(t.rows[i][0], 2, r, cfg.terms);
            CHECK(t.rows[i][1] == v.lo);
            CHECK(t.rows[i][2] == v.hi);
        }
        const std::string csv = render(t, "csv");
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 1002);
        CHECK(csv.rfind("x,lo,hi\n", 0) == 0);
        const nlohmann::json j = nlohmann::json::parse(render(t, "json"));
        CHECK(j["rows"].size() == 1001);
        CHECK_THROWS_AS(render(t, "xml"), ValidityError);
    }

    TEST_CASE("eval targets")
    {
        RunConfig cfg;
        cfg.grid = 10;
        for (const char* target : {"W", "S", "g", "g1", "g2", "k1", "k2", "k3", "k4", "l1", "l2", "l3", "l4"})
            CHECK(cmd_eval(cfg, target).rows.size() == 11);
        CHECK_THROWS_AS(cmd_eval(cfg, "k5"), ValidityError);
        CHECK_THROWS_AS(cmd_eval(cfg, "g", 0.5, 0.2), ValidityError);
        cfg.kappa = 0.45;
        CHECK_THROWS_AS(cmd_eval(cfg, "g"), ValidityError);
    }

    TEST_CASE("gamma and kappa spellings agree")
    {
        RunConfig a, b;
        a.kappa = 0.5 / 0.70710678;
        b.kappa = Roughness::from_gamma(0.70710678).kappa();
        a.grid = b.grid = 50;
        CHECK(render(cmd_eval(a, "g2"), "csv") == render(cmd_eval(b, "g2"), "csv"));
    }

    TEST_CASE("certify exit codes")
    {
        RunConfig cfg;
        const CommandResult g = cmd_certify(cfg, "g-roots");
        CHECK(g.exit == kExitPass);
        CHECK(g.json["verdict"] == "pass");
        CHECK(g.json.contains("checks"));
        CHECK(g.json["config"].contains("prefix_depth"));

        CHECK(cmd_certify(cfg, "kappa").exit == kExitPass);
        CHECK(cmd_certify(cfg, "cases", 8).exit == kExitPass);

        RunConfig wide = cfg;
        wide.kappa = 0.6;
        const CommandResult w = cmd_certify(wide, "g-roots");
        CHECK(w.exit == kExitPass);
        CHECK_THROWS_AS(cmd_certify(wide, "kappa"), ValidityError);
        CHECK_THROWS_AS(cmd_certify(wide, "cases"), ValidityError);
        CHECK_THROWS_AS(cmd_certify(cfg, "nope"), ValidityError);

        RunConfig coarse = cfg;
        coarse.kappa = 0.5;
        coarse.grid = 2;
        CHECK(cmd_certify(coarse, "kappa").exit == kExitInconclusive);

        CHECK(exit_code(Verdict::fail) == kExitFail);
    }

    TEST_CASE("measure tables")
    {
        RunConfig cfg;
        cfg.samples = 5000;
        cfg.bins = 16;
        const Table m = cmd_measure(cfg, true);
        CHECK(m.rows.size() == 16);
        const Table s = cmd_sbr(cfg, 0.3);
        double total = 0;
        for (const auto& row : s.rows)
            total += row[2];
        CHECK(total == doctest::Approx(1.0));
        const CommandResult t = cmd_telescoping(cfg, 10);
        CHECK(t.exit == kExitPass);
        CHECK(t.json["paper_fidelity_note"] == true);
        cfg.samples = 50;
        CHECK(cmd_density(cfg, -1).rows.size() == 17);
        CHECK(cmd_density(cfg, 3).rows.size() == 17);
    }

    TEST_CASE("output files")
    {
        RunConfig cfg;
        cfg.out_dir = scratch_dir("out").string();
        const std::string p = write_output(cfg, "a.csv", "x\n1\n");
        CHECK(slurp(p) == "x\n1\n");
        fs::remove_all(cfg.out_dir);
    }

    TEST_CASE("figures")
    {
        RunConfig cfg;
        cfg.out_dir = scratch_dir("fig").string();
        const std::vector<std::string> paths = cmd_figures(cfg, {1, 4, 7});
        REQUIRE(paths.size() == 3);
        for (const std::string& p : paths) {
            const std::string svg = slurp(p);
            CHECK(svg.find("<svg") != std::string::npos);
            CHECK(svg.find("</svg>") != std::string::npos);
        }
        CHECK(fs::path(paths[0]).filename() == "fig1.svg");
        fs::remove_all(cfg.out_dir);
        CHECK_THROWS(figure_svg(11));
    }
}
