#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "momint/dimensional.hpp"
#include "momint/grid.hpp"

namespace momint::scenario {

enum class Regime {
    reference,
    shifted,
    smoothed,
    excited,
    gpe,
    thomas_fermi,
    manybody_tg,
    manybody_fermi,
    manybody_pse_tg,
    manybody_pse_fermi,
};

// Throws ConfigError for unknown names.
Regime parse_regime(const std::string& name);
std::string regime_name(Regime regime);

// One data series of a figure: regime plus the knobs that regime reads.
// Unused knobs must stay at their defaults (validate() rejects e.g. g with
// a non-GPE regime), so a config cannot silently carry dead parameters.
struct CaseSpec {
    std::string label;
    Regime regime = Regime::reference;
    double y0 = 0.0;      // step/sigmoid centre
    double zeta = 0.0;    // sigmoid width; > 0 required by smoothed
    int n = 0;            // eigenstate index for excited
    double g = 0.0;       // coupling for gpe / thomas_fermi
    int n_particles = 10; // many-body regimes

    void validate() const;
};

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;  // >= 2

    std::vector<double> points() const;
};

// A scenario is one figure's worth of data: a command (density, sweep,
// resolvance), the case list, and the sampling axes.  Sweep-command
// variants: mode "" runs the notch metrics per row, "peak_shift" tracks
// the PSE maximum per zeta value, "excited_ratio" tabulates the half-line
// moment ratio over n_values.
struct Scenario {
    std::string description;
    std::string command = "density";
    std::string mode;
    std::string metric = "q0";  // column family the emitted plot script draws
    std::string out_prefix = "run";
    std::vector<CaseSpec> cases;

    std::vector<double> phi_values;      // density columns
    std::optional<SweepSpec> sweep;      // sweep rows
    std::vector<double> zeta_values;     // peak_shift columns
    std::vector<int> n_values;           // excited_ratio rows

    GridSpec q_grid{-4.0, 4.0, 1025};          // odd count samples q = 0 exactly
    GridSpec y_grid{-12.0, 12.0, 2048};        // single-particle / GPE work grid
    GridSpec manybody_grid{-11.0, 11.0, 512};  // clears the PSE N=10 turning point

    bool emit_plot_script = false;

    double phi = 3.141592653589793;               // resolvance phase when no laser block
    std::optional<dimensional::LabContext> lab;   // resolvance context

    void validate() const;
};

// Reads a JSON scenario file.  Phase fields accept either radians
// ("phi_values", "sweep") or multiples of pi ("phi_values_pi", "sweep_pi").
Scenario load_scenario(const std::filesystem::path& config_path);

// 12 significant digits, fixed "%.12g" formatting; the determinism
// guarantee (byte-identical reruns) hangs on every cell going through here.
std::string format_sig(double value);

// Execute the scenario, writing CSV/JSON (and optionally a plot script)
// under out_dir.  Returns the list of files written.  Sweep and density
// workloads run their independent rows/columns on a thread pool; output
// order never depends on scheduling.
std::vector<std::filesystem::path> run(const Scenario& scenario,
                                       const std::filesystem::path& out_dir);

std::vector<std::filesystem::path> run_density(const Scenario& scenario,
                                               const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> run_sweep(const Scenario& scenario,
                                             const std::filesystem::path& out_dir);
std::vector<std::filesystem::path> run_resolvance(const Scenario& scenario,
                                                  const std::filesystem::path& out_dir);

}  // namespace momint::scenario
