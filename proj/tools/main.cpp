// momint: momentum-space interferometry of phase-imprinted trapped gases.
//
//   momint density    --config FILE | --regime NAME --phi RAD   [--out DIR]
//   momint sweep      --config FILE | --regime NAME --sweep A:B:N
//   momint resolvance --config FILE [--phi RAD] [--out DIR]
//   momint selftest   [--out DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "momint/errors.hpp"
#include "momint/scenario.hpp"
#include "momint/selftest.hpp"

namespace fs = std::filesystem;
using momint::ConfigError;
using momint::scenario::CaseSpec;
using momint::scenario::Scenario;

namespace {

// Flag values shared by the density / sweep / resolvance subcommands.
struct Flags {
    std::string config;
    std::string out_dir = ".";
    std::string out_prefix;
    std::string regime;
    std::string sweep;  // START:STOP:COUNT
    std::string mode;
    std::string metric;
    std::vector<double> phi;
    double y0 = 0.0;
    double zeta = 0.0;
    double g = 0.0;
    int n = 0;
    int n_particles = 10;
    bool plot = false;

    // CLI11 occurrence counters, to distinguish "given" from defaulted.
    CLI::Option* opt_y0 = nullptr;
    CLI::Option* opt_zeta = nullptr;
    CLI::Option* opt_g = nullptr;
    CLI::Option* opt_n = nullptr;
    CLI::Option* opt_particles = nullptr;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "scenario config file (JSON)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", f.out_dir, "output directory (created if missing)");
    cmd->add_option("--out-prefix", f.out_prefix, "basename for the written artifacts");
}

void add_case_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--regime", f.regime,
                    "reference | shifted | smoothed | excited | gpe | thomas_fermi | "
                    "manybody_tg | manybody_fermi | manybody_pse_tg | manybody_pse_fermi");
    f.opt_y0 = cmd->add_option("--y0", f.y0, "imprint centre");
    f.opt_zeta = cmd->add_option("--zeta", f.zeta, "sigmoid imprint width");
    f.opt_n = cmd->add_option("--n", f.n, "eigenstate index (excited regime)");
    f.opt_g = cmd->add_option("--g", f.g, "coupling (gpe / thomas_fermi regimes)");
    f.opt_particles = cmd->add_option("--N", f.n_particles, "particle number (many-body regimes)");
    cmd->add_flag("--plot", f.plot, "also emit a plotting script next to the CSV");
}

momint::scenario::SweepSpec parse_sweep_flag(const std::string& text) {
    momint::scenario::SweepSpec spec;
    std::istringstream in(text);
    std::string a, b, c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
        throw ConfigError("--sweep expects START:STOP:COUNT");
    try {
        std::size_t used = 0;
        spec.start = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        spec.stop = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        const long count = std::stol(c, &used);
        if (used != c.size() || count < 2) throw std::invalid_argument(c);
        spec.count = static_cast<std::size_t>(count);
    } catch (const std::exception&) {
        throw ConfigError("--sweep expects START:STOP:COUNT with numeric fields, count >= 2");
    }
    return spec;
}

// Build the scenario for one subcommand from config file plus flags.  When
// --regime (or any case knob) is given it defines the entire case list, so
// flag-only invocations need no config at all.
Scenario assemble(const std::string& command, const Flags& f) {
    Scenario sc;
    if (!f.config.empty()) {
        sc = momint::scenario::load_scenario(f.config);
        if (sc.command != command)
            throw ConfigError("config declares command \"" + sc.command +
                              "\" but the subcommand is \"" + command + "\"");
    } else {
        sc.command = command;
        sc.out_prefix = command;
    }

    const auto given = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };
    const bool knobs_given = given(f.opt_y0) || given(f.opt_zeta) || given(f.opt_n) ||
                             given(f.opt_g) || given(f.opt_particles);
    if (!f.regime.empty()) {
        CaseSpec cs;
        cs.label = f.regime;
        cs.regime = momint::scenario::parse_regime(f.regime);
        cs.y0 = f.y0;
        cs.zeta = f.zeta;
        cs.n = f.n;
        cs.g = f.g;
        cs.n_particles = f.n_particles;
        sc.cases = {cs};
        if (f.config.empty()) sc.out_prefix = command + "_" + f.regime;
    } else if (knobs_given) {
        throw ConfigError("case knobs (--y0/--zeta/--n/--g/--N) need --regime");
    }

    if (!f.phi.empty()) {
        if (command == "density") sc.phi_values = f.phi;
        if (command == "resolvance") {
            if (f.phi.size() > 1) throw ConfigError("resolvance takes a single --phi");
            sc.phi = f.phi.front();
        }
    }
    if (!f.sweep.empty()) sc.sweep = parse_sweep_flag(f.sweep);
    if (!f.mode.empty()) sc.mode = f.mode;
    if (!f.metric.empty()) sc.metric = f.metric;
    if (!f.out_prefix.empty()) sc.out_prefix = f.out_prefix;
    if (f.plot) sc.emit_plot_script = true;
    return sc;
}

int run_scenario_command(const std::string& command, const Flags& f) {
    const Scenario sc = assemble(command, f);
    const auto written = momint::scenario::run(sc, f.out_dir);
    for (const auto& path : written) {
        std::cout << "wrote " << path.string() << "\n";
        if (command == "resolvance" && path.extension() == ".json") {
            std::ifstream in(path);
            std::cout << in.rdbuf();
        }
    }
    return 0;
}

int run_selftest(const std::string& out_dir) {
    const auto report = momint::selftest::run_all(fs::path(out_dir) / "selftest_artifacts");
    momint::selftest::print_report(report, std::cout);
    return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"momentum-space interferometry of phase-imprinted trapped gases"};
    app.require_subcommand(1);

    Flags fd, fs_, fr;
    std::string selftest_out = ".";

    CLI::App* density = app.add_subcommand("density", "density columns over q");
    add_common_flags(density, fd);
    add_case_flags(density, fd);
    density->add_option("--phi", fd.phi, "imprint phase in radians (repeatable)");

    CLI::App* sweep = app.add_subcommand("sweep", "metric tables over a phase sweep");
    add_common_flags(sweep, fs_);
    add_case_flags(sweep, fs_);
    sweep->add_option("--sweep", fs_.sweep, "phase sweep START:STOP:COUNT (radians)");
    sweep->add_option("--mode", fs_.mode, "\"\" (notch metrics) | peak_shift | excited_ratio");
    sweep->add_option("--metric", fs_.metric, "column family the emitted plot script draws");

    CLI::App* resolvance = app.add_subcommand("resolvance", "dimensional report");
    add_common_flags(resolvance, fr);
    resolvance->add_option("--phi", fr.phi, "imprint phase in radians");

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--out", selftest_out, "directory for determinism artifacts");

    try {
        app.parse(argc, argv);
        if (density->parsed()) return run_scenario_command("density", fd);
        if (sweep->parsed()) return run_scenario_command("sweep", fs_);
        if (resolvance->parsed()) return run_scenario_command("resolvance", fr);
        return run_selftest(selftest_out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const momint::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const momint::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
