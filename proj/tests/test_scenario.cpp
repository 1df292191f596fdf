#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "momint/basis.hpp"
#include "momint/dimensional.hpp"
#include "momint/errors.hpp"
#include "momint/momentum.hpp"
#include "momint/notch.hpp"
#include "momint/scenario.hpp"

using namespace momint;
namespace fs = std::filesystem;
using doctest::Approx;
using scenario::CaseSpec;
using scenario::Regime;
using scenario::Scenario;

namespace {

constexpr double pi = 3.141592653589793;

fs::path work_dir(const std::string& leaf) {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() /
                     ("momint-scenario-" + std::to_string(static_cast<long>(::getpid())));
        fs::create_directories(p);
        return p;
    }();
    const fs::path dir = root / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) cells.push_back(cell);
    if (!line.empty() && line.back() == sep) cells.push_back("");
    return cells;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) rows.push_back(split(line, ','));
    return rows;
}

CaseSpec make_case(Regime r) {
    CaseSpec c;
    c.regime = r;
    c.label = scenario::regime_name(r);
    return c;
}

}  // namespace

TEST_CASE("regime names round trip") {
    for (const char* name :
         {"reference", "shifted", "smoothed", "excited", "gpe", "thomas_fermi", "manybody_tg",
          "manybody_fermi", "manybody_pse_tg", "manybody_pse_fermi"})
        CHECK(scenario::regime_name(scenario::parse_regime(name)) == name);
    CHECK_THROWS_AS(scenario::parse_regime("no_such_regime"), ConfigError);
}

TEST_CASE("loader round trips a sweep config") {
    const fs::path dir = work_dir("load_sweep");
    const fs::path cfg = write_config(dir, "sweep.json", R"json({
        "description": "notch metrics around the dark point",
        "command": "sweep",
        "metric": "width",
        "out_prefix": "widths",
        "emit_plot_script": true,
        "cases": [
            {"label": "ideal", "regime": "reference"},
            {"label": "soft", "regime": "smoothed", "zeta": 0.1, "y0": 0.2}
        ],
        "sweep_pi": {"start": 0.8, "stop": 1.2, "count": 5},
        "q_grid": {"lo": -5, "hi": 5, "points": 129}
    })json");
    const Scenario sc = scenario::load_scenario(cfg);
    CHECK(sc.command == "sweep");
    CHECK(sc.mode.empty());
    CHECK(sc.metric == "width");
    CHECK(sc.out_prefix == "widths");
    CHECK(sc.emit_plot_script);
    REQUIRE(sc.cases.size() == 2);
    CHECK(sc.cases[0].regime == Regime::reference);
    CHECK(sc.cases[1].zeta == 0.1);
    CHECK(sc.cases[1].y0 == 0.2);
    REQUIRE(sc.sweep.has_value());
    CHECK(sc.sweep->count == 5);
    CHECK(sc.sweep->start == Approx(0.8 * pi).epsilon(1e-15));
    CHECK(sc.sweep->stop == Approx(1.2 * pi).epsilon(1e-15));
    const auto pts = sc.sweep->points();
    REQUIRE(pts.size() == 5);
    CHECK(pts[2] == Approx(pi).epsilon(1e-14));
    CHECK(sc.q_grid.lo == -5.0);
    CHECK(sc.q_grid.n_points == 129);
}

TEST_CASE("loader accepts radian and pi-scaled phase lists") {
    const fs::path dir = work_dir("load_phis");
    const fs::path cfg = write_config(dir, "density.json", R"json({
        "command": "density",
        "regime": "reference",
        "phi_values": [1.5],
        "phi_values_pi": [1.0, 1.2]
    })json");
    const Scenario sc = scenario::load_scenario(cfg);
    REQUIRE(sc.phi_values.size() == 3);
    CHECK(sc.phi_values[0] == 1.5);
    CHECK(sc.phi_values[1] == Approx(pi).epsilon(1e-15));
    CHECK(sc.phi_values[2] == Approx(1.2 * pi).epsilon(1e-15));
    REQUIRE(sc.cases.size() == 1);
    CHECK(sc.cases[0].label == "reference");
}

TEST_CASE("top-level excited shorthand expands n_values into cases") {
    const fs::path dir = work_dir("load_excited");
    const fs::path cfg = write_config(dir, "excited.json", R"json({
        "command": "density",
        "regime": "excited",
        "n_values": [0, 2],
        "phi_values_pi": [1.0]
    })json");
    const Scenario sc = scenario::load_scenario(cfg);
    REQUIRE(sc.cases.size() == 2);
    CHECK(sc.cases[0].label == "n=0");
    CHECK(sc.cases[0].n == 0);
    CHECK(sc.cases[1].label == "n=2");
    CHECK(sc.cases[1].n == 2);
}

TEST_CASE("loader rejects malformed input") {
    const fs::path dir = work_dir("load_bad");
    CHECK_THROWS_AS(scenario::load_scenario(dir / "missing.json"), ConfigError);
    CHECK_THROWS_AS(
        scenario::load_scenario(write_config(dir, "syntax.json", "{\"command\": density}")),
        ConfigError);
    CHECK_THROWS_AS(scenario::load_scenario(write_config(dir, "array.json", "[1, 2]")),
                    ConfigError);
    CHECK_THROWS_AS(scenario::load_scenario(write_config(dir, "clash.json", R"json({
        "command": "density", "regime": "reference", "phi_values_pi": [1],
        "typo_key": true
    })json")),
                    ConfigError);
    CHECK_THROWS_AS(scenario::load_scenario(write_config(dir, "case_key.json", R"json({
        "command": "density", "phi_values_pi": [1],
        "cases": [{"regime": "reference", "colour": "red"}]
    })json")),
                    ConfigError);
    CHECK_THROWS_AS(scenario::load_scenario(write_config(dir, "grid_key.json", R"json({
        "command": "density", "regime": "reference", "phi_values_pi": [1],
        "q_grid": {"lo": -4, "hi": 4, "n": 100}
    })json")),
                    ConfigError);
    CHECK_THROWS_AS(scenario::load_scenario(write_config(dir, "regime.json", R"json({
        "command": "density", "regime": "quantum_foam", "phi_values_pi": [1]
    })json")),
                    ConfigError);
}

TEST_CASE("case knob validation") {
    Scenario sc;
    sc.command = "density";
    sc.phi_values = {pi};
    const auto rejects = [&](CaseSpec c) {
        sc.cases = {c};
        CHECK_THROWS_AS(sc.validate(), ConfigError);
    };

    CaseSpec c = make_case(Regime::reference);
    c.y0 = 0.5;
    rejects(c);

    c = make_case(Regime::shifted);  // y0 left at 0
    rejects(c);

    c = make_case(Regime::smoothed);  // zeta left at 0
    rejects(c);

    c = make_case(Regime::excited);
    c.g = 3.0;
    rejects(c);

    c = make_case(Regime::thomas_fermi);  // g left at 0
    rejects(c);

    c = make_case(Regime::gpe);
    c.g = -1.0;
    rejects(c);

    c = make_case(Regime::manybody_tg);
    c.n_particles = 21;
    rejects(c);

    c = make_case(Regime::manybody_fermi);
    c.n = 2;
    rejects(c);

    // a valid reference case passes
    sc.cases = {make_case(Regime::reference)};
    CHECK_NOTHROW(sc.validate());
}

TEST_CASE("scenario-level validation") {
    Scenario sc;
    sc.command = "teleport";
    CHECK_THROWS_AS(sc.validate(), ConfigError);

    sc = Scenario{};
    sc.command = "density";
    sc.cases = {make_case(Regime::reference)};
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // no phi_values

    sc.phi_values = {pi};
    sc.mode = "peak_shift";
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // density takes no mode
    sc.mode.clear();

    sc.cases.push_back(make_case(Regime::reference));
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // duplicate labels
    sc.cases.pop_back();

    sc.command = "sweep";
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // no sweep block
    sc.sweep = scenario::SweepSpec{0.8 * pi, 1.2 * pi, 1};
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // count < 2
    sc.sweep->count = 5;
    CHECK_NOTHROW(sc.validate());

    sc.mode = "peak_shift";
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // wrong case regime
    CaseSpec pse = make_case(Regime::manybody_pse_fermi);
    sc.cases = {pse};
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // missing zeta_values
    sc.zeta_values = {0.0, 0.5};
    CHECK_NOTHROW(sc.validate());
    sc.zeta_values = {-0.1};
    CHECK_THROWS_AS(sc.validate(), ConfigError);

    sc.mode = "excited_ratio";
    sc.zeta_values.clear();
    sc.cases.clear();
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // missing n_values
    sc.n_values = {0, 1, 61};
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc.n_values = {0, 1, 2};
    CHECK_NOTHROW(sc.validate());

    sc.mode = "sideways";
    CHECK_THROWS_AS(sc.validate(), ConfigError);

    sc = Scenario{};
    sc.command = "resolvance";
    CHECK_THROWS_AS(sc.validate(), ConfigError);  // no lab block
}

TEST_CASE("density artifacts are deterministic and well formed") {
    Scenario sc;
    sc.command = "density";
    sc.out_prefix = "den";
    sc.q_grid = GridSpec{-4.0, 4.0, 513};
    CaseSpec ex = make_case(Regime::excited);
    ex.n = 2;
    ex.label = "n=2";
    sc.cases = {make_case(Regime::reference), ex};
    sc.phi_values = {0.9 * pi, pi};

    const fs::path dir_a = work_dir("den_a"), dir_b = work_dir("den_b");
    const auto files_a = scenario::run(sc, dir_a);
    const auto files_b = scenario::run(sc, dir_b);
    REQUIRE(files_a.size() == 1);
    CHECK(files_a[0].filename() == "den.csv");
    const std::string bytes = slurp(files_a[0]);
    CHECK(!bytes.empty());
    CHECK(bytes == slurp(files_b[0]));

    const auto rows = read_csv(files_a[0]);
    REQUIRE(rows.size() == 1 + 513);
    REQUIRE(rows[0].size() == 5);
    CHECK(rows[0][0] == "q [dimensionless]");
    CHECK(rows[0][1] == "reference phi=2.82743 [dimensionless]");
    CHECK(rows[0][2] == "reference phi=3.14159 [dimensionless]");
    CHECK(rows[0][3] == "n=2 phi=2.82743 [dimensionless]");
    CHECK(rows[0][4] == "n=2 phi=3.14159 [dimensionless]");

    // the 513-point grid over [-4, 4] hits q = 0.5 exactly at row 288
    const auto& row = rows[1 + 288];
    CHECK(std::stod(row[0]) == 0.5);
    CHECK(std::stod(row[1]) ==
          Approx(momentum::reference_density(0.5, 0.9 * pi, 0.0)).epsilon(1e-11));
    CHECK(std::stod(row[3]) ==
          Approx(momentum::excited_density(0.5, 0.9 * pi, 2)).epsilon(1e-11));
}

TEST_CASE("notch sweep reports per-row status flags") {
    Scenario sc;
    sc.command = "sweep";
    sc.out_prefix = "swp";
    sc.cases = {make_case(Regime::reference)};
    sc.sweep = scenario::SweepSpec{0.0, 1.2 * pi, 4};  // 0, 0.4 pi, 0.8 pi, 1.2 pi

    const auto files = scenario::run(sc, work_dir("sweep"));
    const auto rows = read_csv(files[0]);
    REQUIRE(rows.size() == 5);
    REQUIRE(rows[0].size() == 12);
    CHECK(rows[0][0] == "phi [rad]");
    CHECK(rows[0][1] == "reference q0 [dimensionless]");
    CHECK(rows[0][5] == "reference visibility [dimensionless]");
    CHECK(rows[0][6] == "reference approx_q0 [dimensionless]");
    CHECK(rows[0][11] == "reference status [flag]");

    // phi = 0: flat reference density, no notch; metric cells stay empty
    CHECK(rows[1][11] == "no_notch");
    for (int c = 1; c <= 5; ++c) CHECK(rows[1][c].empty());
    CHECK(!rows[1][6].empty());  // the linearized columns still evaluate

    CHECK(rows[2][11] == "low_visibility");
    CHECK(!rows[2][1].empty());
    CHECK(rows[3][11] == "ok");
    CHECK(rows[4][11] == "ok");

    // sanity on the numbers that are present
    CHECK(std::stod(rows[3][1]) ==
          Approx(notch::q0_exact_reference(0.8 * pi)).epsilon(1e-6));
}

TEST_CASE("excited_ratio sweep tabulates the moment ratios") {
    Scenario sc;
    sc.command = "sweep";
    sc.mode = "excited_ratio";
    sc.out_prefix = "ratios";
    sc.n_values = {0, 1, 2};

    const auto files = scenario::run(sc, work_dir("ratio"));
    const auto rows = read_csv(files[0]);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"n [index]", "a_n [dimensionless]",
                                              "b_n [dimensionless]", "a_over_b [dimensionless]"});
    CHECK(rows[1][0] == "0");
    CHECK(std::stod(rows[1][1]) == Approx(std::sqrt(pi / 2.0)).epsilon(1e-11));
    CHECK(std::stod(rows[1][2]) == 1.0);
    CHECK(std::stod(rows[3][1]) == Approx(std::sqrt(2.0 * pi)).epsilon(1e-11));
    CHECK(std::stod(rows[3][2]) == Approx(6.0).epsilon(1e-11));
    CHECK(std::stod(rows[3][3]) == Approx(std::sqrt(2.0 * pi) / 6.0).epsilon(1e-11));
}

TEST_CASE("resolvance artifact carries the lab-frame numbers") {
    Scenario sc;
    sc.command = "resolvance";
    sc.description = "flight-time readout";
    sc.out_prefix = "res";
    sc.phi = 1.1 * pi;
    dimensional::LabContext ctx;
    ctx.omega = 2.0 * pi * 2000.0;
    ctx.t_flight = 0.2;
    ctx.delta_s = 5e-6;
    sc.lab = ctx;

    const auto files = scenario::run(sc, work_dir("res"));
    REQUIRE(files.size() == 1);
    CHECK(files[0].filename() == "res.json");
    const auto doc = nlohmann::json::parse(slurp(files[0]));
    CHECK(doc.at("description") == "flight-time readout");
    CHECK(doc.at("phi_rad").get<double>() == Approx(1.1 * pi).epsilon(1e-14));
    CHECK(doc.at("phi_effective_rad").get<double>() == Approx(1.1 * pi).epsilon(1e-14));
    CHECK(doc.at("notch_velocity_m_per_s").get<double>() ==
          Approx(dimensional::notch_velocity(1.1 * pi, ctx)).epsilon(1e-14));
    CHECK(doc.at("displacement_m").get<double>() ==
          Approx(0.2 * dimensional::notch_velocity(1.1 * pi, ctx)).epsilon(1e-14));
    CHECK(doc.at("resolvance").get<double>() == Approx(238.63).epsilon(1e-4));
}

TEST_CASE("laser block sets the imprinted phase") {
    const fs::path dir = work_dir("laser");
    const fs::path cfg = write_config(dir, "res.json", R"json({
        "command": "resolvance",
        "out_prefix": "laser_res",
        "lab": {
            "omega": 12566.370614359172,
            "t_flight": 0.2,
            "delta_s": 5e-6,
            "laser": {"rabi": 2000.0, "detuning": -1e6, "t_pulse": 3.455751918948773}
        }
    })json");
    const Scenario sc = scenario::load_scenario(cfg);
    REQUIRE(sc.lab.has_value());
    CHECK(sc.lab->has_laser);
    const auto files = scenario::run(sc, dir);
    const auto doc = nlohmann::json::parse(slurp(files[0]));
    // -rabi^2/(4 detuning) = 1, so the phase equals the pulse duration
    CHECK(doc.at("phi_rad").get<double>() == Approx(1.1 * pi).epsilon(1e-12));
    CHECK(doc.at("phi_effective_rad").get<double>() == Approx(1.1 * pi).epsilon(1e-12));
}

TEST_CASE("plot script emission") {
    Scenario sc;
    sc.command = "density";
    sc.out_prefix = "plotted";
    sc.emit_plot_script = true;
    sc.q_grid = GridSpec{-4.0, 4.0, 129};
    sc.cases = {make_case(Regime::reference)};
    sc.phi_values = {pi};

    const auto files = scenario::run(sc, work_dir("plot"));
    REQUIRE(files.size() == 2);
    CHECK(files[1].filename() == "plotted_plot.py");
    const std::string script = slurp(files[1]);
    CHECK(script.find("matplotlib") != std::string::npos);
    CHECK(script.find("plotted.csv") != std::string::npos);
    CHECK(script.find("plotted.png") != std::string::npos);
}

TEST_CASE("format_sig emits 12 significant digits") {
    CHECK(scenario::format_sig(0.5) == "0.5");
    CHECK(scenario::format_sig(-4.0) == "-4");
    CHECK(scenario::format_sig(pi) == "3.14159265359");
    CHECK(scenario::format_sig(1.0 / 3.0) == "0.333333333333");
    CHECK(scenario::format_sig(2.5066282746310002) == "2.50662827463");
}
