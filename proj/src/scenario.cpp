#include "momint/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "momint/basis.hpp"
#include "momint/errors.hpp"
#include "momint/gpe.hpp"
#include "momint/imprint.hpp"
#include "momint/manybody.hpp"
#include "momint/momentum.hpp"
#include "momint/notch.hpp"

namespace momint::scenario {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.141592653589793;

const std::map<std::string, Regime>& regime_table() {
    static const std::map<std::string, Regime> table = {
        {"reference", Regime::reference},
        {"shifted", Regime::shifted},
        {"smoothed", Regime::smoothed},
        {"excited", Regime::excited},
        {"gpe", Regime::gpe},
        {"thomas_fermi", Regime::thomas_fermi},
        {"manybody_tg", Regime::manybody_tg},
        {"manybody_fermi", Regime::manybody_fermi},
        {"manybody_pse_tg", Regime::manybody_pse_tg},
        {"manybody_pse_fermi", Regime::manybody_pse_fermi},
    };
    return table;
}

bool is_tg(Regime r) { return r == Regime::manybody_tg || r == Regime::manybody_pse_tg; }
bool is_pse(Regime r) { return r == Regime::manybody_pse_tg || r == Regime::manybody_pse_fermi; }

imprint::PhaseProfile profile_of(const CaseSpec& c) {
    imprint::PhaseProfile p;
    p.kind = c.zeta > 0.0 ? imprint::ProfileKind::sigmoid : imprint::ProfileKind::step;
    p.y0 = c.y0;
    p.zeta = c.zeta;
    return p;
}

// Work shared by every row/column of one case, built once up front so the
// parallel section only reads.  The GPE ground state depends on g alone
// (phi enters through the imprint), hence a single solve per sweep.
class CaseEngine {
  public:
    CaseEngine(const CaseSpec& spec, const Scenario& sc) : spec_(spec) {
        switch (spec.regime) {
            case Regime::reference:
            case Regime::shifted:
                break;
            case Regime::smoothed:
                psi_ = basis::eigenstate(spec.n, sc.y_grid);
                break;
            case Regime::excited:
                excited_.emplace(spec.n);
                break;
            case Regime::gpe: {
                gpe::GpeParams p;
                p.g = spec.g;
                p.grid = sc.y_grid;
                ground_ = gpe::solve_ground_state(p);
                if (spec.g > 0.0) d_ = gpe::tf_half_width(spec.g);
                break;
            }
            case Regime::thomas_fermi:
                d_ = gpe::tf_half_width(spec.g);
                break;
            default:
                orbitals_ = is_pse(spec.regime)
                                ? manybody::pse_orbitals(spec.n_particles, sc.manybody_grid)
                                : manybody::ground_orbitals(spec.n_particles, sc.manybody_grid);
                break;
        }
    }

    const CaseSpec& spec() const { return spec_; }

    std::vector<double> density_column(double phi, const GridSpec& q_grid) const {
        std::vector<double> out(q_grid.n_points);
        switch (spec_.regime) {
            case Regime::reference:
            case Regime::shifted:
                for (std::size_t i = 0; i < q_grid.n_points; ++i)
                    out[i] = momentum::reference_density(q_grid.point(i), phi, spec_.y0);
                return out;
            case Regime::smoothed: {
                const auto chi = imprint::apply_imprint(*psi_, phi, profile_of(spec_));
                return momentum::density_of(momentum::to_momentum(chi, q_grid)).values;
            }
            case Regime::excited:
                for (std::size_t i = 0; i < q_grid.n_points; ++i)
                    out[i] = (*excited_)(q_grid.point(i), phi);
                return out;
            case Regime::gpe: {
                const auto chi = imprint::apply_imprint(ground_->psi, phi, profile_of(spec_));
                return momentum::density_of(momentum::to_momentum(chi, q_grid)).values;
            }
            case Regime::thomas_fermi:
                for (std::size_t i = 0; i < q_grid.n_points; ++i)
                    out[i] = gpe::tf_momentum_density(q_grid.point(i), phi, d_);
                return out;
            default: {
                const auto imprinted =
                    manybody::imprint_orbitals(*orbitals_, phi, profile_of(spec_));
                if (is_tg(spec_.regime))
                    return manybody::momentum_distribution(manybody::tg_rspdm(imprinted), q_grid)
                        .values;
                for (std::size_t i = 0; i < q_grid.n_points; ++i)
                    out[i] = manybody::fermi_momentum_density_at(imprinted, q_grid.point(i));
                return out;
            }
        }
        return out;  // unreachable
    }

    notch::NotchMetrics notch_row(double phi, const GridSpec& q_grid) const {
        notch::SearchWindow window{q_grid.lo, q_grid.hi,
                                   std::max<std::size_t>(2001, q_grid.n_points)};
        switch (spec_.regime) {
            case Regime::reference:
            case Regime::shifted:
                return notch::find_notch(
                    [&](double q) { return momentum::reference_density(q, phi, spec_.y0); },
                    window);
            case Regime::smoothed: {
                const auto chi = imprint::apply_imprint(*psi_, phi, profile_of(spec_));
                return notch::find_notch(
                    [&](double q) { return std::norm(momentum::to_momentum_at(chi, q)); },
                    window);
            }
            case Regime::excited:
                return notch::find_notch([&](double q) { return (*excited_)(q, phi); }, window);
            case Regime::gpe: {
                const auto chi = imprint::apply_imprint(ground_->psi, phi, profile_of(spec_));
                return notch::find_notch(
                    [&](double q) { return std::norm(momentum::to_momentum_at(chi, q)); },
                    window);
            }
            case Regime::thomas_fermi:
                return notch::find_notch(
                    [&](double q) { return gpe::tf_momentum_density(q, phi, d_); }, window);
            default: {
                const auto imprinted =
                    manybody::imprint_orbitals(*orbitals_, phi, profile_of(spec_));
                if (is_tg(spec_.regime))
                    return notch::find_notch(
                        manybody::momentum_distribution(manybody::tg_rspdm(imprinted), q_grid));
                return notch::find_notch(
                    [&](double q) {
                        return manybody::fermi_momentum_density_at(imprinted, q);
                    },
                    window);
            }
        }
    }

    // Analytic companion columns of the sweep: the linearized reference
    // notch for single-particle cases, the Thomas-Fermi forms for the
    // interacting cases, the leading-order shift alone for excited states.
    struct ApproxCols {
        std::optional<double> q0, q_minus, q_plus, width, visibility;
    };

    ApproxCols approx_row(double phi) const {
        ApproxCols cols;
        switch (spec_.regime) {
            case Regime::reference:
            case Regime::shifted:
            case Regime::smoothed: {
                const auto a = notch::approx_reference(phi);
                cols = {a.q0, a.q_minus, a.q_plus, a.width, a.visibility};
                break;
            }
            case Regime::excited:
                cols.q0 = notch::q0_approx_excited(phi, spec_.n);
                break;
            case Regime::gpe:
            case Regime::thomas_fermi:
                if (d_ > 0.0) {
                    const auto a = gpe::tf_approximations(phi, d_);
                    cols = {a.q0, a.q_minus, a.q_plus, a.width, a.visibility};
                }
                break;
            default:
                break;
        }
        return cols;
    }

    const manybody::OrbitalSet& orbitals() const { return *orbitals_; }

  private:
    CaseSpec spec_;
    std::optional<RealWavefunction> psi_;
    std::optional<momentum::ExcitedDensity> excited_;
    std::optional<gpe::GroundState> ground_;
    double d_ = 0.0;
    std::optional<manybody::OrbitalSet> orbitals_;
};

// Index-sharded pool; rows land in caller-owned slots so emission order is
// the row order, never the completion order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n_threads);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string phi_tag(double phi) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", phi);
    return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    out << content;
    if (!out) throw ConfigError("write failed for " + path.string());
}

std::string join_csv(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

// Generated companion script; kept dependency-free on the C++ side.
std::string plot_script(const Scenario& sc, const std::string& x_label) {
    std::string metric = sc.command == "sweep" && sc.mode.empty() ? sc.metric : "";
    std::ostringstream py;
    py << "#!/usr/bin/env python3\n"
       << "\"\"\"Plot " << sc.out_prefix << ".csv (requires matplotlib).\"\"\"\n"
       << "import csv\n"
       << "from pathlib import Path\n\n"
       << "import matplotlib\n"
       << "matplotlib.use(\"Agg\")\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "HERE = Path(__file__).resolve().parent\n"
       << "METRIC = \"" << metric << "\"  # empty: plot every value column\n\n"
       << "with open(HERE / \"" << sc.out_prefix << ".csv\", newline=\"\") as fh:\n"
       << "    rows = list(csv.DictReader(fh))\n"
       << "cols = list(rows[0].keys())\n"
       << "x_col = cols[0]\n\n"
       << "def series(name):\n"
       << "    pts = [(float(r[x_col]), float(r[name])) for r in rows if r[name] != \"\"]\n"
       << "    return [p[0] for p in pts], [p[1] for p in pts]\n\n"
       << "for name in cols[1:]:\n"
       << "    if name.endswith(\"[flag]\"):\n"
       << "        continue\n"
       << "    if METRIC and f\" {METRIC} \" not in f\"{name} \":\n"
       << "        continue\n"
       << "    xs, ys = series(name)\n"
       << "    if xs:\n"
       << "        plt.plot(xs, ys, label=name)\n"
       << "plt.xlabel(\"" << x_label << "\")\n"
       << "plt.legend(fontsize=7)\n"
       << "plt.title(" << json(sc.description).dump() << ", fontsize=8)\n"
       << "plt.tight_layout()\n"
       << "plt.savefig(HERE / \"" << sc.out_prefix << ".png\", dpi=160)\n"
       << "print(\"wrote\", HERE / \"" << sc.out_prefix << ".png\")\n";
    return py.str();
}

std::vector<fs::path> finish_run(const Scenario& sc, const fs::path& out_dir,
                                 const std::string& csv, const std::string& x_label) {
    fs::create_directories(out_dir);
    std::vector<fs::path> written;
    const fs::path data = out_dir / (sc.out_prefix + ".csv");
    write_text_file(data, csv);
    written.push_back(data);
    if (sc.emit_plot_script) {
        const fs::path script = out_dir / (sc.out_prefix + "_plot.py");
        write_text_file(script, plot_script(sc, x_label));
        written.push_back(script);
    }
    return written;
}

// --- JSON loading -----------------------------------------------------

[[noreturn]] void bad_config(const std::string& message) { throw ConfigError("config: " + message); }

void expect_keys(const json& node, const char* where,
                 std::initializer_list<const char*> allowed) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) bad_config(std::string("unknown key \"") + it.key() + "\" in " + where);
    }
}

double get_number(const json& node, const char* key) {
    if (!node.at(key).is_number()) bad_config(std::string(key) + " must be a number");
    return node.at(key).get<double>();
}

double get_number_or(const json& node, const char* key, double fallback) {
    if (!node.contains(key)) return fallback;
    return get_number(node, key);
}

int get_int_or(const json& node, const char* key, int fallback) {
    if (!node.contains(key)) return fallback;
    if (!node.at(key).is_number_integer()) bad_config(std::string(key) + " must be an integer");
    return node.at(key).get<int>();
}

std::string get_string_or(const json& node, const char* key, const std::string& fallback) {
    if (!node.contains(key)) return fallback;
    if (!node.at(key).is_string()) bad_config(std::string(key) + " must be a string");
    return node.at(key).get<std::string>();
}

GridSpec parse_grid(const json& node, const char* where, GridSpec fallback) {
    if (!node.is_object()) bad_config(std::string(where) + " must be an object");
    expect_keys(node, where, {"lo", "hi", "points"});
    GridSpec g = fallback;
    g.lo = get_number_or(node, "lo", fallback.lo);
    g.hi = get_number_or(node, "hi", fallback.hi);
    if (node.contains("points")) {
        const int p = get_int_or(node, "points", 0);
        if (p <= 0) bad_config(std::string(where) + ".points must be positive");
        g.n_points = static_cast<std::size_t>(p);
    }
    return g;
}

CaseSpec parse_case(const json& node, const Scenario& sc) {
    expect_keys(node, "case", {"label", "regime", "y0", "zeta", "n", "g", "N"});
    if (!node.contains("regime")) bad_config("case needs a regime");
    CaseSpec c;
    c.regime = parse_regime(get_string_or(node, "regime", ""));
    c.label = get_string_or(node, "label", regime_name(c.regime));
    c.y0 = get_number_or(node, "y0", 0.0);
    c.zeta = get_number_or(node, "zeta", 0.0);
    c.n = get_int_or(node, "n", 0);
    c.g = get_number_or(node, "g", 0.0);
    c.n_particles = get_int_or(node, "N", 10);
    (void)sc;
    return c;
}

std::vector<double> parse_phi_list(const json& node, const char* key, double scale) {
    if (!node.at(key).is_array()) bad_config(std::string(key) + " must be an array");
    std::vector<double> out;
    for (const auto& v : node.at(key)) {
        if (!v.is_number()) bad_config(std::string(key) + " entries must be numbers");
        out.push_back(v.get<double>() * scale);
    }
    return out;
}

dimensional::LabContext parse_lab(const json& node) {
    expect_keys(node, "lab", {"mass", "omega", "t_flight", "delta_s", "laser"});
    dimensional::LabContext ctx;
    ctx.mass = get_number_or(node, "mass", dimensional::mass_rb87);
    ctx.omega = get_number_or(node, "omega", 0.0);
    ctx.t_flight = get_number_or(node, "t_flight", 0.0);
    ctx.delta_s = get_number_or(node, "delta_s", 0.0);
    if (node.contains("laser")) {
        const json& l = node.at("laser");
        expect_keys(l, "lab.laser", {"rabi", "detuning", "t_pulse"});
        ctx.has_laser = true;
        ctx.laser.rabi = get_number_or(l, "rabi", 0.0);
        ctx.laser.detuning = get_number_or(l, "detuning", 0.0);
        ctx.laser.t_pulse = get_number_or(l, "t_pulse", 0.0);
    }
    return ctx;
}

}  // namespace

Regime parse_regime(const std::string& name) {
    const auto it = regime_table().find(name);
    if (it == regime_table().end()) bad_config("unknown regime \"" + name + "\"");
    return it->second;
}

std::string regime_name(Regime regime) {
    for (const auto& [name, value] : regime_table())
        if (value == regime) return name;
    return "?";
}

std::vector<double> SweepSpec::points() const {
    std::vector<double> out(count);
    const double step = count > 1 ? (stop - start) / static_cast<double>(count - 1) : 0.0;
    for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
    return out;
}

void CaseSpec::validate() const {
    const auto reject = [&](bool bad, const char* what) {
        if (bad)
            bad_config("case \"" + label + "\" (" + regime_name(regime) + "): " + what);
    };
    reject(!std::isfinite(y0) || !std::isfinite(zeta) || !std::isfinite(g),
           "parameters must be finite");
    reject(zeta < 0.0, "zeta must be nonnegative");
    reject(n < 0, "n must be nonnegative");
    switch (regime) {
        case Regime::reference:
            reject(y0 != 0.0 || zeta != 0.0, "reference fixes y0 = 0, zeta = 0");
            reject(n != 0 || g != 0.0, "reference takes no n or g");
            break;
        case Regime::shifted:
            reject(y0 == 0.0, "shifted needs y0 != 0");
            reject(zeta != 0.0, "shifted keeps the sharp step (zeta = 0)");
            reject(n != 0 || g != 0.0, "shifted takes no n or g");
            break;
        case Regime::smoothed:
            reject(zeta <= 0.0, "smoothed needs zeta > 0");
            reject(g != 0.0, "smoothed takes no g");
            break;
        case Regime::excited:
            reject(y0 != 0.0 || zeta != 0.0,
                   "excited closed form covers the centered sharp step only");
            reject(g != 0.0, "excited takes no g");
            reject(n > 60, "eigenstate order capped at 60");
            break;
        case Regime::gpe:
            reject(g < 0.0, "gpe needs g >= 0");
            reject(n != 0, "gpe takes no n");
            break;
        case Regime::thomas_fermi:
            reject(g <= 0.0, "thomas_fermi needs g > 0");
            reject(y0 != 0.0 || zeta != 0.0,
                   "thomas_fermi closed form covers the centered sharp step only");
            reject(n != 0, "thomas_fermi takes no n");
            break;
        default:
            reject(n_particles < 1 || n_particles > 20, "N must lie in [1, 20]");
            reject(n != 0 || g != 0.0, "many-body regimes take no n or g");
            break;
    }
}

void Scenario::validate() const {
    if (command != "density" && command != "sweep" && command != "resolvance")
        bad_config("command must be density, sweep, or resolvance");
    q_grid.validate();
    y_grid.validate();
    manybody_grid.validate();
    for (const auto& c : cases) c.validate();
    std::map<std::string, int> seen;
    for (const auto& c : cases)
        if (++seen[c.label] == 2) bad_config("duplicate case label \"" + c.label + "\"");

    if (command == "density") {
        if (!mode.empty()) bad_config("density takes no mode");
        if (cases.empty()) bad_config("density needs at least one case");
        if (phi_values.empty()) bad_config("density needs phi_values");
        for (double phi : phi_values)
            if (!std::isfinite(phi)) bad_config("phi_values must be finite");
    } else if (command == "sweep") {
        if (mode.empty() || mode == "peak_shift") {
            if (!sweep) bad_config("sweep command needs a sweep block");
            if (sweep->count < 2) bad_config("sweep.count must be at least 2");
            if (!std::isfinite(sweep->start) || !std::isfinite(sweep->stop))
                bad_config("sweep bounds must be finite");
        }
        if (mode.empty()) {
            if (cases.empty()) bad_config("sweep needs at least one case");
        } else if (mode == "peak_shift") {
            if (cases.size() != 1 || cases[0].regime != Regime::manybody_pse_fermi)
                bad_config("peak_shift mode needs exactly one manybody_pse_fermi case");
            if (zeta_values.empty()) bad_config("peak_shift mode needs zeta_values");
            for (double z : zeta_values)
                if (!(z >= 0.0) || !std::isfinite(z)) bad_config("zeta_values must be >= 0");
        } else if (mode == "excited_ratio") {
            if (n_values.empty()) bad_config("excited_ratio mode needs n_values");
            for (int v : n_values)
                if (v < 0 || v > 60) bad_config("n_values must lie in [0, 60]");
        } else {
            bad_config("unknown sweep mode \"" + mode + "\"");
        }
    } else {  // resolvance
        if (!lab) bad_config("resolvance needs a lab block");
        lab->validate();
        if (!std::isfinite(phi)) bad_config("phi must be finite");
    }
}

Scenario load_scenario(const fs::path& config_path) {
    std::ifstream in(config_path);
    if (!in) bad_config("cannot read " + config_path.string());
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        bad_config(config_path.string() + ": " + e.what());
    }
    if (!doc.is_object()) bad_config("top level must be an object");
    expect_keys(doc, "scenario",
                {"description", "command", "mode", "metric", "out_prefix", "regime", "label",
                 "y0", "zeta", "n", "g", "N", "cases", "phi_values", "phi_values_pi", "sweep",
                 "sweep_pi", "zeta_values", "n_values", "q_grid", "y_grid", "manybody_grid",
                 "emit_plot_script", "phi", "phi_pi", "lab"});

    Scenario sc;
    sc.description = get_string_or(doc, "description", "");
    sc.command = get_string_or(doc, "command", "density");
    sc.mode = get_string_or(doc, "mode", "");
    sc.metric = get_string_or(doc, "metric", "q0");
    sc.out_prefix = get_string_or(doc, "out_prefix", "run");

    if (doc.contains("cases")) {
        if (!doc.at("cases").is_array()) bad_config("cases must be an array");
        for (const auto& node : doc.at("cases")) sc.cases.push_back(parse_case(node, sc));
    } else if (doc.contains("regime")) {
        CaseSpec base = parse_case(
            json{{"regime", doc.at("regime")},
                 {"label", get_string_or(doc, "label",
                                         get_string_or(doc, "regime", ""))},
                 {"y0", get_number_or(doc, "y0", 0.0)},
                 {"zeta", get_number_or(doc, "zeta", 0.0)},
                 {"n", get_int_or(doc, "n", 0)},
                 {"g", get_number_or(doc, "g", 0.0)},
                 {"N", get_int_or(doc, "N", 10)}},
            sc);
        // n_values with the excited regime expands into one case per order
        // (the fig-4 panels run two orders side by side).
        if (doc.contains("n_values") && base.regime == Regime::excited &&
            sc.mode != "excited_ratio") {
            for (const auto& v : doc.at("n_values")) {
                if (!v.is_number_integer()) bad_config("n_values must be integers");
                CaseSpec c = base;
                c.n = v.get<int>();
                c.label = "n=" + std::to_string(c.n);
                sc.cases.push_back(c);
            }
        } else {
            sc.cases.push_back(base);
        }
    }

    if (doc.contains("phi_values")) sc.phi_values = parse_phi_list(doc, "phi_values", 1.0);
    if (doc.contains("phi_values_pi")) {
        auto extra = parse_phi_list(doc, "phi_values_pi", kPi);
        sc.phi_values.insert(sc.phi_values.end(), extra.begin(), extra.end());
    }
    const auto parse_sweep = [&](const char* key, double scale) {
        const json& node = doc.at(key);
        expect_keys(node, key, {"start", "stop", "count"});
        SweepSpec s;
        s.start = get_number(node, "start") * scale;
        s.stop = get_number(node, "stop") * scale;
        const int count = get_int_or(node, "count", 0);
        if (count < 0) bad_config("sweep.count must be nonnegative");
        s.count = static_cast<std::size_t>(count);
        sc.sweep = s;
    };
    if (doc.contains("sweep")) parse_sweep("sweep", 1.0);
    if (doc.contains("sweep_pi")) parse_sweep("sweep_pi", kPi);

    if (doc.contains("zeta_values")) sc.zeta_values = parse_phi_list(doc, "zeta_values", 1.0);
    if (doc.contains("n_values") && (sc.mode == "excited_ratio" || sc.cases.empty())) {
        for (const auto& v : doc.at("n_values")) {
            if (!v.is_number_integer()) bad_config("n_values must be integers");
            sc.n_values.push_back(v.get<int>());
        }
    }

    if (doc.contains("q_grid")) sc.q_grid = parse_grid(doc.at("q_grid"), "q_grid", sc.q_grid);
    if (doc.contains("y_grid")) sc.y_grid = parse_grid(doc.at("y_grid"), "y_grid", sc.y_grid);
    if (doc.contains("manybody_grid"))
        sc.manybody_grid = parse_grid(doc.at("manybody_grid"), "manybody_grid", sc.manybody_grid);

    if (doc.contains("emit_plot_script")) {
        if (!doc.at("emit_plot_script").is_boolean())
            bad_config("emit_plot_script must be a boolean");
        sc.emit_plot_script = doc.at("emit_plot_script").get<bool>();
    }
    sc.phi = get_number_or(doc, "phi", sc.phi);
    if (doc.contains("phi_pi")) sc.phi = get_number(doc, "phi_pi") * kPi;
    if (doc.contains("lab")) sc.lab = parse_lab(doc.at("lab"));

    sc.validate();
    return sc;
}

std::string format_sig(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::vector<fs::path> run_density(const Scenario& sc, const fs::path& out_dir) {
    std::vector<CaseEngine> engines;
    engines.reserve(sc.cases.size());
    for (const auto& c : sc.cases) engines.emplace_back(c, sc);

    struct Column {
        std::size_t engine;
        double phi;
        std::vector<double> values;
    };
    std::vector<Column> columns;
    for (std::size_t e = 0; e < engines.size(); ++e)
        for (double phi : sc.phi_values) columns.push_back({e, phi, {}});

    parallel_for(columns.size(), [&](std::size_t i) {
        columns[i].values = engines[columns[i].engine].density_column(columns[i].phi, sc.q_grid);
    });

    std::string csv;
    std::vector<std::string> header{"q [dimensionless]"};
    for (const auto& col : columns)
        header.push_back(engines[col.engine].spec().label + " phi=" + phi_tag(col.phi) +
                         " [dimensionless]");
    csv += join_csv(header);
    for (std::size_t i = 0; i < sc.q_grid.n_points; ++i) {
        std::vector<std::string> row{format_sig(sc.q_grid.point(i))};
        for (const auto& col : columns) row.push_back(format_sig(col.values[i]));
        csv += join_csv(row);
    }
    return finish_run(sc, out_dir, csv, "q [dimensionless]");
}

namespace {

std::vector<fs::path> run_notch_sweep(const Scenario& sc, const fs::path& out_dir) {
    std::vector<CaseEngine> engines;
    engines.reserve(sc.cases.size());
    for (const auto& c : sc.cases) engines.emplace_back(c, sc);
    const std::vector<double> phis = sc.sweep->points();

    struct CaseCells {
        std::optional<notch::NotchMetrics> metrics;
        CaseEngine::ApproxCols approx;
        std::string status = "ok";
    };
    std::vector<std::vector<CaseCells>> rows(phis.size(),
                                             std::vector<CaseCells>(engines.size()));

    parallel_for(phis.size() * engines.size(), [&](std::size_t flat) {
        const std::size_t r = flat / engines.size();
        const std::size_t e = flat % engines.size();
        CaseCells& cell = rows[r][e];
        cell.approx = engines[e].approx_row(phis[r]);
        try {
            cell.metrics = engines[e].notch_row(phis[r], sc.q_grid);
            if (cell.metrics->low_visibility) cell.status = "low_visibility";
        } catch (const NoNotchError&) {
            cell.status = "no_notch";
        } catch (const AmbiguousNotchError&) {
            cell.status = "ambiguous_notch";
        }
    });

    std::string csv;
    std::vector<std::string> header{"phi [rad]"};
    for (const auto& eng : engines) {
        const std::string& label = eng.spec().label;
        for (const char* metric :
             {"q0", "q_minus", "q_plus", "width", "visibility", "approx_q0", "approx_q_minus",
              "approx_q_plus", "approx_width", "approx_visibility"})
            header.push_back(label + " " + metric + " [dimensionless]");
        header.push_back(label + " status [flag]");
    }
    csv += join_csv(header);

    const auto cell_str = [](const std::optional<double>& v) {
        return v ? format_sig(*v) : std::string();
    };
    for (std::size_t r = 0; r < phis.size(); ++r) {
        std::vector<std::string> row{format_sig(phis[r])};
        for (std::size_t e = 0; e < engines.size(); ++e) {
            const CaseCells& cell = rows[r][e];
            if (cell.metrics) {
                row.push_back(format_sig(cell.metrics->q0));
                row.push_back(format_sig(cell.metrics->q_minus));
                row.push_back(format_sig(cell.metrics->q_plus));
                row.push_back(format_sig(cell.metrics->width));
                row.push_back(format_sig(cell.metrics->visibility));
            } else {
                row.insert(row.end(), 5, std::string());
            }
            row.push_back(cell_str(cell.approx.q0));
            row.push_back(cell_str(cell.approx.q_minus));
            row.push_back(cell_str(cell.approx.q_plus));
            row.push_back(cell_str(cell.approx.width));
            row.push_back(cell_str(cell.approx.visibility));
            row.push_back(cell.status);
        }
        csv += join_csv(row);
    }
    return finish_run(sc, out_dir, csv, "phi [rad]");
}

std::vector<fs::path> run_peak_shift_sweep(const Scenario& sc, const fs::path& out_dir) {
    const CaseSpec& c = sc.cases[0];
    const auto orbitals = manybody::pse_orbitals(c.n_particles, sc.manybody_grid);
    const std::vector<double> phis = sc.sweep->points();

    struct Cell {
        std::optional<double> shift;
        std::string status = "ok";
    };
    std::vector<std::vector<Cell>> rows(phis.size(), std::vector<Cell>(sc.zeta_values.size()));

    parallel_for(phis.size() * sc.zeta_values.size(), [&](std::size_t flat) {
        const std::size_t r = flat / sc.zeta_values.size();
        const std::size_t z = flat % sc.zeta_values.size();
        imprint::PhaseProfile profile;
        profile.kind = sc.zeta_values[z] > 0.0 ? imprint::ProfileKind::sigmoid
                                               : imprint::ProfileKind::step;
        profile.y0 = c.y0;
        profile.zeta = sc.zeta_values[z];
        try {
            rows[r][z].shift = manybody::peak_shift(orbitals, phis[r], profile);
        } catch (const NoPeakError&) {
            rows[r][z].status = "no_peak";
        }
    });

    std::string csv;
    std::vector<std::string> header{"phi [rad]"};
    for (double z : sc.zeta_values) {
        header.push_back(std::string("shift zeta=") + phi_tag(z) + " [dimensionless]");
        header.push_back(std::string("status zeta=") + phi_tag(z) + " [flag]");
    }
    csv += join_csv(header);
    for (std::size_t r = 0; r < phis.size(); ++r) {
        std::vector<std::string> row{format_sig(phis[r])};
        for (std::size_t z = 0; z < sc.zeta_values.size(); ++z) {
            row.push_back(rows[r][z].shift ? format_sig(*rows[r][z].shift) : std::string());
            row.push_back(rows[r][z].status);
        }
        csv += join_csv(row);
    }
    return finish_run(sc, out_dir, csv, "phi [rad]");
}

std::vector<fs::path> run_excited_ratio_sweep(const Scenario& sc, const fs::path& out_dir) {
    std::string csv = join_csv(
        {"n [index]", "a_n [dimensionless]", "b_n [dimensionless]", "a_over_b [dimensionless]"});
    for (int n : sc.n_values) {
        const auto m = basis::half_line_moments(n);
        csv += join_csv({std::to_string(n), format_sig(m.a), format_sig(m.b),
                         format_sig(m.ratio)});
    }
    return finish_run(sc, out_dir, csv, "n [index]");
}

}  // namespace

std::vector<fs::path> run_sweep(const Scenario& sc, const fs::path& out_dir) {
    if (sc.mode == "peak_shift") return run_peak_shift_sweep(sc, out_dir);
    if (sc.mode == "excited_ratio") return run_excited_ratio_sweep(sc, out_dir);
    return run_notch_sweep(sc, out_dir);
}

std::vector<fs::path> run_resolvance(const Scenario& sc, const fs::path& out_dir) {
    const dimensional::LabContext& ctx = *sc.lab;
    const double phi_raw = ctx.has_laser ? dimensional::imprinted_phase(ctx) : sc.phi;
    const double phi_eff = dimensional::wrap_phase(phi_raw);

    nlohmann::ordered_json doc;
    doc["description"] = sc.description;
    doc["phi_rad"] = phi_raw;
    doc["phi_effective_rad"] = phi_eff;
    doc["notch_velocity_m_per_s"] = dimensional::notch_velocity(phi_eff, ctx);
    doc["displacement_m"] = dimensional::notch_displacement(phi_eff, ctx);
    doc["resolvance"] = dimensional::resolvance(ctx);

    fs::create_directories(out_dir);
    const fs::path path = out_dir / (sc.out_prefix + ".json");
    write_text_file(path, doc.dump(2) + "\n");
    return {path};
}

std::vector<fs::path> run(const Scenario& sc, const fs::path& out_dir) {
    sc.validate();
    if (sc.command == "density") return run_density(sc, out_dir);
    if (sc.command == "sweep") return run_sweep(sc, out_dir);
    return run_resolvance(sc, out_dir);
}

}  // namespace momint::scenario
