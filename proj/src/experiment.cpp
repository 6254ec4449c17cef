#include "topoladder/experiment.hpp"

#include "topoladder/drive.hpp"
#include "topoladder/edge.hpp"
#include "topoladder/parallel.hpp"
#include "topoladder/pumping.hpp"
#include "topoladder/spectral.hpp"
#include "topoladder/topology.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace topoladder {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, ExperimentKind>& kind_table() {
    static const std::map<std::string, ExperimentKind> table{
        {"bands", ExperimentKind::Bands},
        {"phase-diagram", ExperimentKind::PhaseDiagram},
        {"berry", ExperimentKind::Berry},
        {"winding", ExperimentKind::Winding},
        {"spectrum-scan", ExperimentKind::SpectrumScan},
        {"edge-fields", ExperimentKind::EdgeFields},
        {"ring", ExperimentKind::Ring},
        {"scatter", ExperimentKind::Scatter},
        {"chern", ExperimentKind::Chern},
        {"pump", ExperimentKind::Pump},
        {"drive-plan", ExperimentKind::DrivePlan},
    };
    return table;
}

// ---- config parsing ---------------------------------------------------------

struct Symbols {
    std::optional<double> G_plus;
    std::optional<double> G_minus;
    std::optional<double> J2_c;
};

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

double resolve_value(const json& v, const Symbols& sym, const std::string& where) {
    if (v.is_number()) {
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ConfigError(where + ": value must be finite");
        return x;
    }
    if (!v.is_object()) throw ConfigError(where + ": expected a number or a coefficient object");
    double total = 0.0;
    for (const auto& [key, c] : v.items()) {
        if (!c.is_number()) throw ConfigError(where + "." + key + ": coefficient must be a number");
        const double coeff = c.get<double>();
        std::optional<double> base;
        if (key == "const") base = 1.0;
        else if (key == "pi") base = pi;
        else if (key == "G_plus") base = sym.G_plus;
        else if (key == "G_minus") base = sym.G_minus;
        else if (key == "J2_c") base = sym.J2_c;
        else throw ConfigError(where + ": unknown symbol \"" + key + "\"");
        if (!base) throw ConfigError(where + ": symbol \"" + key + "\" is not defined for these couplings");
        total += coeff * *base;
    }
    return total;
}

double number_or(const json& obj, const char* key, double fallback, const Symbols& sym,
                 const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return resolve_value(obj.at(key), sym, where + "." + key);
}

std::size_t count_or(const json& obj, const char* key, std::size_t fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(where + "." + key + ": expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::string string_or(const json& obj, const char* key, const std::string& fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return obj.at(key).get<std::string>();
}

LadderParams parse_params(const json& obj, const std::string& where) {
    check_keys(obj, {"J1", "J2", "t1", "t2", "G", "delta"}, where);
    const Symbols none;
    LadderParams p;
    p.J1 = number_or(obj, "J1", 1.0, none, where);
    p.t1 = number_or(obj, "t1", 0.0, none, where);
    p.t2 = number_or(obj, "t2", 0.0, none, where);
    Symbols sym;
    sym.J2_c = p.J1 + p.t1 - p.t2;
    p.J2 = number_or(obj, "J2", 0.0, sym, where);
    const BoundarySet bset = phase_boundaries(p);
    sym.G_plus = bset.G_plus;
    sym.G_minus = bset.G_minus;
    p.G = number_or(obj, "G", 0.0, sym, where);
    p.delta = number_or(obj, "delta", 0.0, sym, where);
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return p;
}

Symbols symbols_of(const LadderParams& p) {
    const BoundarySet b = phase_boundaries(p);
    return {b.G_plus, b.G_minus, b.J2_c};
}

ModulationProtocol parse_protocol(const json& obj, const LadderParams& base) {
    const std::string where = "protocol";
    check_keys(obj, {"G_bar", "G_tilde", "T", "phi0", "delta_tilde", "T_prime", "phi0_prime"}, where);
    const Symbols sym = symbols_of(base);
    ModulationProtocol m;
    m.G_bar = number_or(obj, "G_bar", 0.0, sym, where);
    m.G_tilde = number_or(obj, "G_tilde", 0.0, sym, where);
    m.T = number_or(obj, "T", 1.0, sym, where);
    m.phi0 = number_or(obj, "phi0", 0.0, sym, where);
    m.delta_tilde = number_or(obj, "delta_tilde", 0.0, sym, where);
    m.T_prime = number_or(obj, "T_prime", m.T, sym, where);
    m.phi0_prime = number_or(obj, "phi0_prime", 0.0, sym, where);
    try {
        m.validate();
        (void)m.loop_period();
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    return m;
}

Site parse_site(const std::string& s, const std::string& where) {
    if (s == "a") return Site::a;
    if (s == "A") return Site::A;
    if (s == "b") return Site::b;
    if (s == "B") return Site::B;
    throw ConfigError(where + ": site must be one of a, A, b, B");
}

Range parse_range(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number_integer()) {
        throw ConfigError(where + ": expected [lo, hi, count]");
    }
    Range r{v[0].get<double>(), v[1].get<double>(), v[2].get<std::size_t>()};
    if (r.count < 2 || !(r.hi > r.lo)) throw ConfigError(where + ": need hi > lo and count >= 2");
    return r;
}

ExperimentConfig parse_one(const json& root) {
    check_keys(root, {"schema", "experiment", "figure", "label", "title", "params", "protocol",
                      "scattering", "ring", "scan", "grid", "edge", "pump", "drive"},
               "config");
    ExperimentConfig cfg;
    cfg.schema = string_or(root, "schema", "", "config");
    if (cfg.schema != kConfigSchema) {
        throw ConfigError("config: schema must be \"" + std::string(kConfigSchema) + "\", got \"" +
                          cfg.schema + "\"");
    }
    const std::string kind = string_or(root, "experiment", "", "config");
    const auto k = parse_kind(kind);
    if (!k) throw ConfigError("config: unknown experiment \"" + kind + "\"");
    cfg.kind = *k;
    cfg.figure = string_or(root, "figure", "", "config");
    cfg.label = string_or(root, "label", "", "config");
    cfg.title = string_or(root, "title", "", "config");
    for (const std::string& s : {cfg.figure, cfg.label}) {
        for (char c : s) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
                throw ConfigError("config: figure and label may only hold [A-Za-z0-9_-]");
            }
        }
    }
    if (cfg.figure.empty()) throw ConfigError("config: \"figure\" is required");

    cfg.params = parse_params(root.value("params", json::object()), "params");

    if (root.contains("grid")) {
        const json& g = root.at("grid");
        check_keys(g, {"k", "t", "N", "probe"}, "grid");
        cfg.grid_k = count_or(g, "k", cfg.grid_k, "grid");
        cfg.grid_t = count_or(g, "t", cfg.grid_t, "grid");
        cfg.N = count_or(g, "N", cfg.N, "grid");
        cfg.probe_points = count_or(g, "probe", cfg.probe_points, "grid");
    }
    if (root.contains("scan")) {
        const json& s = root.at("scan");
        check_keys(s, {"G", "J2"}, "scan");
        if (s.contains("G")) cfg.scan_G = parse_range(s.at("G"), "scan.G");
        if (s.contains("J2")) cfg.scan_J2 = parse_range(s.at("J2"), "scan.J2");
    }
    if (root.contains("protocol")) cfg.protocol = parse_protocol(root.at("protocol"), cfg.params);
    if (root.contains("scattering")) {
        const json& s = root.at("scattering");
        check_keys(s, {"t_w", "t_0", "site", "cell"}, "scattering");
        ScatteringSetup su;
        const Symbols none;
        su.t_w = number_or(s, "t_w", su.t_w, none, "scattering");
        su.t_0 = number_or(s, "t_0", su.t_0, none, "scattering");
        su.coupled_site = parse_site(string_or(s, "site", "B", "scattering"), "scattering.site");
        su.coupled_cell = count_or(s, "cell", 0, "scattering");
        su.N = cfg.N;
        try {
            su.validate();
        } catch (const Error& e) {
            throw ConfigError(std::string("scattering: ") + e.what());
        }
        cfg.scattering = su;
    }
    if (root.contains("ring")) {
        const json& r = root.at("ring");
        check_keys(r, {"right", "J3", "J4", "t3", "t4"}, "ring");
        RingParams ring;
        ring.left = cfg.params;
        json right = root.value("params", json::object());
        right.merge_patch(r.value("right", json::object()));
        ring.right = parse_params(right, "ring.right");
        const Symbols none;
        for (const char* key : {"J3", "J4", "t3", "t4"}) {
            if (!r.contains(key)) throw ConfigError(std::string("ring: \"") + key + "\" is required");
        }
        ring.J3 = number_or(r, "J3", 0.0, none, "ring");
        ring.J4 = number_or(r, "J4", 0.0, none, "ring");
        ring.t3 = number_or(r, "t3", 0.0, none, "ring");
        ring.t4 = number_or(r, "t4", 0.0, none, "ring");
        ring.N = cfg.N;
        cfg.ring = ring;
    }
    if (root.contains("edge")) {
        const json& e = root.at("edge");
        check_keys(e, {"target_energy", "window"}, "edge");
        const Symbols sym = symbols_of(cfg.params);
        cfg.target_energy = number_or(e, "target_energy", 0.0, sym, "edge");
        cfg.energy_window = number_or(e, "window", cfg.energy_window, sym, "edge");
    }
    if (root.contains("pump")) {
        const json& p = root.at("pump");
        check_keys(p, {"instantaneous", "evolve", "steps_per_period", "record_stride", "start_cell",
                       "start_site"},
                   "pump");
        for (const char* key : {"instantaneous", "evolve"}) {
            if (p.contains(key) && !p.at(key).is_boolean()) {
                throw ConfigError(std::string("pump.") + key + ": expected a boolean");
            }
        }
        cfg.pump.instantaneous = p.value("instantaneous", true);
        cfg.pump.evolve = p.value("evolve", true);
        cfg.pump.steps_per_period = count_or(p, "steps_per_period", cfg.pump.steps_per_period, "pump");
        cfg.pump.record_stride = count_or(p, "record_stride", cfg.pump.record_stride, "pump");
        cfg.pump.start_cell = count_or(p, "start_cell", 0, "pump");
        cfg.pump.start_site = parse_site(string_or(p, "start_site", "B", "pump"), "pump.start_site");
        if (cfg.pump.steps_per_period == 0 || cfg.pump.record_stride == 0) {
            throw ConfigError("pump: steps_per_period and record_stride must be positive");
        }
    }
    if (root.contains("drive")) {
        const json& d = root.at("drive");
        check_keys(d, {"g1", "g2", "alpha_re", "alpha_im", "Delta_a", "Delta_A", "kappa"}, "drive");
        const Symbols none;
        DriveInputs in;
        in.g1 = number_or(d, "g1", in.g1, none, "drive");
        in.g2 = number_or(d, "g2", in.g2, none, "drive");
        in.alpha = {number_or(d, "alpha_re", 1.0, none, "drive"), number_or(d, "alpha_im", 0.0, none, "drive")};
        in.Delta_a = number_or(d, "Delta_a", 0.0, none, "drive");
        in.Delta_A = number_or(d, "Delta_A", 0.0, none, "drive");
        in.kappa = number_or(d, "kappa", 0.0, none, "drive");
        in.J1 = cfg.params.J1;
        in.J2 = cfg.params.J2;
        in.N = cfg.N;
        cfg.drive = in;
    } else {
        cfg.drive.J1 = cfg.params.J1;
        cfg.drive.J2 = cfg.params.J2;
        cfg.drive.N = cfg.N;
    }

    if (cfg.N < 2) throw ConfigError("grid.N must be >= 2");
    switch (cfg.kind) {
        case ExperimentKind::Chern:
        case ExperimentKind::Pump:
            if (!cfg.protocol) throw ConfigError("config: this experiment needs a \"protocol\" block");
            break;
        case ExperimentKind::Scatter:
            if (!cfg.scattering) throw ConfigError("config: scatter needs a \"scattering\" block");
            break;
        case ExperimentKind::Ring:
            if (!cfg.ring) throw ConfigError("config: ring needs a \"ring\" block");
            break;
        default:
            break;
    }
    return cfg;
}

// ---- output -----------------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string num(double x) { return format_number(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }

void dump_json(std::ostream& os, const ojson& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (v.type()) {
        case ojson::value_t::object: {
            if (v.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, val] : v.items()) {
                if (!first) os << ",\n";
                first = false;
                os << inner << ojson(key).dump() << ": ";
                dump_json(os, val, indent + 1);
            }
            os << "\n" << pad << "}";
            return;
        }
        case ojson::value_t::array: {
            bool scalars = std::all_of(v.begin(), v.end(), [](const ojson& e) { return e.is_primitive(); });
            if (v.empty()) {
                os << "[]";
            } else if (scalars) {
                os << "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) os << ", ";
                    dump_json(os, v[i], indent + 1);
                }
                os << "]";
            } else {
                os << "[\n";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) os << ",\n";
                    os << inner;
                    dump_json(os, v[i], indent + 1);
                }
                os << "\n" << pad << "]";
            }
            return;
        }
        case ojson::value_t::number_float: {
            const double x = v.get<double>();
            if (std::isfinite(x)) os << format_number(x);
            else os << "null";
            return;
        }
        default:
            os << v.dump();
    }
}

struct PlotSpec {
    std::string file;
    std::string kind;  // lines | points | map | bars
    std::string x;
    std::vector<std::string> ys;
    std::string title;
};

class Sink {
public:
    explicit Sink(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw Error("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    void csv(const std::string& name, const Table& t) {
        std::ostringstream os;
        for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
        write(name, os.str());
    }

    void json_file(const std::string& name, const ojson& v) {
        std::ostringstream os;
        dump_json(os, v, 0);
        os << "\n";
        write(name, os.str());
    }

    void plot(PlotSpec spec) { plots_.push_back(std::move(spec)); }

    void plot_script(const std::string& name) {
        std::ostringstream os;
        os << "# Plots the data files written next to this script.\n"
              "from pathlib import Path\n\n"
              "import matplotlib\n"
              "matplotlib.use(\"Agg\")\n"
              "import matplotlib.pyplot as plt\n"
              "import numpy as np\n\n"
              "HERE = Path(__file__).resolve().parent\n\n\n"
              "def load(name):\n"
              "    return np.genfromtxt(HERE / name, delimiter=\",\", names=True, dtype=None, encoding=\"utf-8\")\n\n\n"
              "def draw(name, kind, x, ys, title):\n"
              "    d = load(name)\n"
              "    fig, ax = plt.subplots(figsize=(6, 4))\n"
              "    if kind == \"map\":\n"
              "        sc = ax.scatter(d[x], d[ys[0]], c=d[ys[1]], s=6, cmap=\"viridis\")\n"
              "        fig.colorbar(sc, ax=ax, label=ys[1])\n"
              "        ax.set_ylabel(ys[0])\n"
              "    elif kind == \"bars\":\n"
              "        ax.bar(d[x], d[ys[0]])\n"
              "    else:\n"
              "        for y in ys:\n"
              "            if kind == \"points\":\n"
              "                ax.plot(d[x], d[y], \".\", ms=3)\n"
              "            else:\n"
              "                ax.plot(d[x], d[y], lw=1)\n"
              "    ax.set_xlabel(x)\n"
              "    ax.set_title(title)\n"
              "    fig.tight_layout()\n"
              "    fig.savefig(HERE / (Path(name).stem + \".png\"), dpi=150)\n"
              "    plt.close(fig)\n\n\n"
              "PLOTS = [\n";
        for (const auto& p : plots_) {
            os << "    (" << ojson(p.file).dump() << ", " << ojson(p.kind).dump() << ", "
               << ojson(p.x).dump() << ", [";
            for (std::size_t i = 0; i < p.ys.size(); ++i) os << (i ? ", " : "") << ojson(p.ys[i]).dump();
            os << "], " << ojson(p.title).dump() << "),\n";
        }
        os << "]\n\n"
              "if __name__ == \"__main__\":\n"
              "    for spec in PLOTS:\n"
              "        draw(*spec)\n";
        write(name, os.str());
    }

    const std::vector<fs::path>& written() const { return written_; }

private:
    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot open " + path.string() + " for writing");
        f << content;
        if (!f) throw Error("write failed for " + path.string());
        written_.push_back(path);
    }

    fs::path dir_;
    std::vector<fs::path> written_;
    std::vector<PlotSpec> plots_;
};

ojson params_json(const LadderParams& p) {
    return ojson{{"J1", p.J1}, {"J2", p.J2}, {"t1", p.t1}, {"t2", p.t2}, {"G", p.G}, {"delta", p.delta}};
}

ojson protocol_json(const ModulationProtocol& m) {
    return ojson{{"G_bar", m.G_bar},         {"G_tilde", m.G_tilde}, {"T", m.T},
                 {"phi0", m.phi0},           {"delta_tilde", m.delta_tilde},
                 {"T_prime", m.T_prime},     {"phi0_prime", m.phi0_prime}};
}

ojson boundaries_json(const LadderParams& p) {
    const BoundarySet b = phase_boundaries(p);
    ojson out{{"G_plus", b.G_plus}, {"G_minus", nullptr}, {"J2_c", b.J2_c},
              {"interior_condition", b.interior_condition}};
    if (b.G_minus) out["G_minus"] = *b.G_minus;
    return out;
}

std::vector<std::string> band_columns(const std::string& stem, std::size_t n, std::size_t first = 1) {
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(stem + std::to_string(i + first));
    return cols;
}

std::vector<std::string> mode_columns(std::size_t cells) {
    std::vector<std::string> cols;
    for (std::size_t j = 0; j < cells; ++j) {
        for (Site s : {Site::a, Site::A, Site::b, Site::B}) cols.push_back(std::string(site_name(s)) + std::to_string(j));
    }
    return cols;
}

Eigen::VectorXd open_spectrum(const LadderParams& p, std::size_t N) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(open_chain_hamiltonian(p, N), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("open-chain eigensolver failed");
    return solver.eigenvalues();
}

ojson state_json(const EdgeState& s, std::size_t cells) {
    const FieldDistribution fd = field_distribution(s, cells);
    const std::array<Site, 2> mech{Site::b, Site::B};
    const std::array<Site, 2> opt{Site::a, Site::A};
    const auto [mc, ms] = fd.argmax(mech);
    const auto [oc, os] = fd.argmax(opt);
    return ojson{{"energy", s.energy},
                 {"tag", to_string(s.tag)},
                 {"localization", s.localization},
                 {"ipr", s.ipr},
                 {"mechanical_max", {{"cell", mc}, {"site", site_name(ms)}}},
                 {"optical_max", {{"cell", oc}, {"site", site_name(os)}}}};
}

Table field_table(const EdgeState& s, std::size_t cells) {
    const FieldDistribution fd = field_distribution(s, cells);
    Table t{{"cell", "a", "A", "b", "B"}, {}};
    for (std::size_t j = 0; j < cells; ++j) {
        const auto r = static_cast<Eigen::Index>(j);
        t.add({num(j), num(fd.probs(r, 0)), num(fd.probs(r, 1)), num(fd.probs(r, 2)), num(fd.probs(r, 3))});
    }
    return t;
}

// ---- runners ----------------------------------------------------------------

struct Ctx {
    const ExperimentConfig& cfg;
    const RunOptions& opts;
    Sink& sink;
    std::string pre;

    std::size_t grid_k() const { return opts.grid_k.value_or(cfg.grid_k); }
    std::size_t grid_t() const { return opts.grid_t.value_or(cfg.grid_t); }
    std::string file(const std::string& stem, const char* ext) const { return pre + "_" + stem + ext; }
    ojson header() const {
        return ojson{{"figure", cfg.figure}, {"label", cfg.label}, {"experiment", to_string(cfg.kind)},
                     {"title", cfg.title}, {"params", params_json(cfg.params)}};
    }
};

void run_bands(Ctx& c) {
    const auto ks = closed_k_grid(c.grid_k());
    const BandStructure bs = band_structure(c.cfg.params, ks);
    Table t{{"k", "E1", "E2", "E3", "E4"}, {}};
    for (std::size_t i = 0; i < bs.size(); ++i) {
        const auto& e = bs.energies[i];
        t.add({num(bs.k_grid[i]), num(e(0)), num(e(1)), num(e(2)), num(e(3))});
    }
    c.sink.csv(c.file("bands", ".csv"), t);
    c.sink.plot({c.file("bands", ".csv"), "lines", "k", {"E1", "E2", "E3", "E4"}, c.cfg.title});

    ojson out = c.header();
    out["boundaries"] = boundaries_json(c.cfg.params);
    ojson gaps = ojson::array();
    for (int lower = 1; lower <= 3; ++lower) {
        const GapMinimum g = scan_min_gap(c.cfg.params, lower);
        gaps.push_back({{"bands", {lower, lower + 1}}, {"gap", g.gap}, {"k", g.k}, {"closed", g.gap < kGapClosedTol}});
    }
    out["min_gaps"] = gaps;
    c.sink.json_file(c.file("bands", ".json"), out);
}

void run_phase_diagram(Ctx& c) {
    const auto J2s = c.cfg.scan_J2.value_or(Range{0.0, 2.0, 121}).values();
    const auto Gs = c.cfg.scan_G.value_or(Range{0.0, 1.2, 81}).values();
    const std::size_t M = c.grid_k();
    struct Cell {
        PhaseLabel label;
        bool degenerate{false};
        double winding{nan_v};
    };
    std::vector<Cell> cells(J2s.size() * Gs.size());
    parallel_for(cells.size(), c.opts.threads, [&](std::size_t idx) {
        LadderParams p = c.cfg.params;
        p.J2 = J2s[idx / Gs.size()];
        p.G = Gs[idx % Gs.size()];
        p.delta = 0.0;
        Cell& cell = cells[idx];
        try {
            cell.label = classify_phase(p, M);
        } catch (const DegenerateBandError&) {
            cell.degenerate = true;
            cell.label.raw.fill(nan_v);
        }
        try {
            cell.winding = winding_number(p);
        } catch (const OnBoundaryError&) {
        }
    });
    Table t{{"J2", "G", "class_code", "class", "winding", "gamma1", "gamma2", "gamma3", "gamma4"}, {}};
    std::map<std::string, std::size_t> counts;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        const Cell& cell = cells[idx];
        const std::string name = cell.degenerate ? "Degenerate" : to_string(cell.label.cls);
        int code = 0;
        if (cell.degenerate) code = -1;
        else if (cell.label.cls != PhaseClass::Undetermined) code = static_cast<int>(cell.label.cls) + 1;
        ++counts[name];
        const auto& g = cell.label.raw;
        t.add({num(J2s[idx / Gs.size()]), num(Gs[idx % Gs.size()]), num(code), name, num(cell.winding),
               num(g[0]), num(g[1]), num(g[2]), num(g[3])});
    }
    c.sink.csv(c.file("phase_diagram", ".csv"), t);
    c.sink.plot({c.file("phase_diagram", ".csv"), "map", "J2", {"G", "class_code"}, c.cfg.title});

    Table b{{"J2", "G_plus", "G_minus"}, {}};
    for (double J2 : J2s) {
        LadderParams p = c.cfg.params;
        p.J2 = J2;
        const BoundarySet bs = phase_boundaries(p);
        b.add({num(J2), num(bs.G_plus), num(bs.G_minus.value_or(nan_v))});
    }
    c.sink.csv(c.file("boundaries", ".csv"), b);
    c.sink.plot({c.file("boundaries", ".csv"), "lines", "J2", {"G_plus", "G_minus"}, c.cfg.title + " boundaries"});

    ojson out = c.header();
    LadderParams ref = c.cfg.params;
    out["J2_c"] = ref.J1 + ref.t1 - ref.t2;
    out["interior_J2"] = ref.t1 > 0.0 ? ojson(ref.J1 * ref.t2 / ref.t1) : ojson(nullptr);
    out["grid"] = {J2s.size(), Gs.size()};
    ojson cnt = ojson::object();
    for (const auto& [k, v] : counts) cnt[k] = v;
    out["counts"] = cnt;
    c.sink.json_file(c.file("phase_diagram", ".json"), out);
}

void run_berry(Ctx& c) {
    const PhaseLabel label = classify_phase(c.cfg.params, c.grid_k());
    Table t{{"band", "gamma"}, {}};
    for (int n = 0; n < 4; ++n) t.add({num(n + 1), num(label.raw[n])});
    c.sink.csv(c.file("berry", ".csv"), t);
    c.sink.plot({c.file("berry", ".csv"), "bars", "band", {"gamma"}, c.cfg.title});
    ojson out = c.header();
    out["gamma"] = {label.raw[0], label.raw[1], label.raw[2], label.raw[3]};
    out["snapped"] = {label.snapped[0], label.snapped[1], label.snapped[2], label.snapped[3]};
    out["class"] = to_string(label.cls);
    out["grid"] = c.grid_k();
    c.sink.json_file(c.file("berry", ".json"), out);
}

void run_winding(Ctx& c) {
    const auto Gs = c.cfg.scan_G.value_or(Range{0.0, 1.2, 241}).values();
    const std::size_t M = std::max<std::size_t>(c.grid_k(), 3);
    std::vector<double> w(Gs.size(), nan_v);
    parallel_for(Gs.size(), c.opts.threads, [&](std::size_t i) {
        LadderParams p = c.cfg.params;
        p.G = Gs[i];
        try {
            w[i] = winding_number(p, M);
        } catch (const OnBoundaryError&) {
        }
    });
    Table t{{"G", "winding"}, {}};
    for (std::size_t i = 0; i < Gs.size(); ++i) t.add({num(Gs[i]), num(w[i])});
    c.sink.csv(c.file("winding", ".csv"), t);
    c.sink.plot({c.file("winding", ".csv"), "points", "G", {"winding"}, c.cfg.title});
    ojson out = c.header();
    out["winding"] = winding_number(c.cfg.params, M);
    out["boundaries"] = boundaries_json(c.cfg.params);
    c.sink.json_file(c.file("winding", ".json"), out);
}

void run_spectrum_scan(Ctx& c) {
    const auto Gs = c.cfg.scan_G.value_or(Range{0.0, 1.2, 121}).values();
    const std::size_t N = c.cfg.N;
    // Per-G work is independent; split by index and assemble in order.
    std::vector<SpectralScan> parts(Gs.size());
    parallel_for(Gs.size(), c.opts.threads, [&](std::size_t i) {
        parts[i] = spectrum_vs_G(c.cfg.params, std::span<const double>(&Gs[i], 1), N);
    });
    Table t{{"G"}, {}};
    for (const auto& col : band_columns("E", 4 * N)) t.header.push_back(col);
    Table e{{"G", "energy", "tag", "localization", "ipr"}, {}};
    ojson counts = ojson::array();
    for (std::size_t i = 0; i < Gs.size(); ++i) {
        std::vector<std::string> row{num(Gs[i])};
        const Eigen::VectorXd& ev = parts[i].eigenvalues[0];
        for (Eigen::Index n = 0; n < ev.size(); ++n) row.push_back(num(ev(n)));
        t.add(std::move(row));
        for (const auto& s : parts[i].edge_states[0]) {
            e.add({num(Gs[i]), num(s.energy), to_string(s.tag), num(s.localization), num(s.ipr)});
        }
        counts.push_back(parts[i].edge_states[0].size());
    }
    c.sink.csv(c.file("spectrum", ".csv"), t);
    c.sink.csv(c.file("edge_states", ".csv"), e);
    c.sink.plot({c.file("spectrum", ".csv"), "lines", "G", band_columns("E", 4 * N), c.cfg.title});
    c.sink.plot({c.file("edge_states", ".csv"), "points", "G", {"energy"}, c.cfg.title + " edge states"});
    ojson out = c.header();
    out["N"] = N;
    out["boundaries"] = boundaries_json(c.cfg.params);
    out["edge_counts"] = counts;
    c.sink.json_file(c.file("spectrum", ".json"), out);
}

void run_edge_fields(Ctx& c) {
    const std::size_t N = c.cfg.N;
    const auto H = open_chain_hamiltonian(c.cfg.params, N);
    const auto all = detect_edge_states(H, bulk_reference(c.cfg.params));
    std::vector<EdgeState> chosen;
    for (const auto& s : all) {
        if (std::abs(s.energy - c.cfg.target_energy) < c.cfg.energy_window) chosen.push_back(s);
    }
    if (chosen.empty()) {
        throw NumericalError("edge-fields: no edge state within " + format_number(c.cfg.energy_window) +
                             " of E = " + format_number(c.cfg.target_energy));
    }
    ojson out = c.header();
    out["N"] = N;
    out["target_energy"] = c.cfg.target_energy;
    ojson states = ojson::array();
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        const std::string stem = "field" + std::to_string(i);
        c.sink.csv(c.file(stem, ".csv"), field_table(chosen[i], N));
        c.sink.plot({c.file(stem, ".csv"), "lines", "cell", {"a", "A", "b", "B"},
                     c.cfg.title + " E=" + format_number(chosen[i].energy)});
        states.push_back(state_json(chosen[i], N));
    }
    out["states"] = states;
    c.sink.json_file(c.file("fields", ".json"), out);
}

void run_ring(Ctx& c) {
    const RingParams& ring = *c.cfg.ring;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(ring_hamiltonian(ring), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("ring eigensolver failed");
    Table ev{{"index", "energy"}, {}};
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        ev.add({num(static_cast<std::size_t>(i)), num(solver.eigenvalues()(i))});
    }
    c.sink.csv(c.file("ring_spectrum", ".csv"), ev);
    c.sink.plot({c.file("ring_spectrum", ".csv"), "points", "index", {"energy"}, c.cfg.title});

    const auto states = ring_interface_states(ring);
    ojson out = c.header();
    out["right_params"] = params_json(ring.right);
    out["seams"] = {{"J3", ring.J3}, {"J4", ring.J4}, {"t3", ring.t3}, {"t4", ring.t4}};
    out["N"] = ring.N;
    ojson list = ojson::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string stem = "ring_field" + std::to_string(i);
        c.sink.csv(c.file(stem, ".csv"), field_table(states[i], 2 * ring.N));
        c.sink.plot({c.file(stem, ".csv"), "lines", "cell", {"a", "A", "b", "B"},
                     c.cfg.title + " E=" + format_number(states[i].energy)});
        list.push_back({{"energy", states[i].energy}, {"localization", states[i].localization}, {"ipr", states[i].ipr}});
    }
    out["interface_states"] = list;
    c.sink.json_file(c.file("ring", ".json"), out);
}

void run_scatter(Ctx& c) {
    const ScatteringSetup& su = *c.cfg.scattering;
    const LadderParams& p = c.cfg.params;
    const auto grid = default_probe_grid(su, p, c.cfg.probe_points);
    const ReflectionSpectrum spec = reflection_spectrum(su, p, grid, c.opts.threads);
    Table t{{"Omega", "k_w", "r_re", "r_im", "t_re", "t_im", "R", "unitarity_defect", "condition"}, {}};
    double worst = 0.0;
    for (const auto& pt : spec.points) {
        const double defect = std::abs(std::norm(pt.r) + std::norm(pt.t) - 1.0);
        worst = std::max(worst, defect);
        t.add({num(pt.Omega), num(pt.k_w), num(pt.r.real()), num(pt.r.imag()), num(pt.t.real()),
               num(pt.t.imag()), num(pt.R), num(defect), num(pt.condition)});
    }
    c.sink.csv(c.file("reflection", ".csv"), t);
    c.sink.plot({c.file("reflection", ".csv"), "lines", "Omega", {"R"}, c.cfg.title});

    const Eigen::VectorXd ev = open_spectrum(p, su.N);
    Table e{{"index", "energy"}, {}};
    for (Eigen::Index i = 0; i < ev.size(); ++i) e.add({num(static_cast<std::size_t>(i)), num(ev(i))});
    c.sink.csv(c.file("eigenvalues", ".csv"), e);

    ojson out = c.header();
    out["setup"] = {{"t_w", su.t_w}, {"t_0", su.t_0}, {"cell", su.coupled_cell},
                    {"site", site_name(su.coupled_site)}, {"N", su.N}};
    out["max_unitarity_defect"] = worst;
    ojson errs = ojson::array();
    for (const auto& [i, msg] : spec.errors) errs.push_back({{"index", i}, {"message", msg}});
    out["errors"] = errs;
    ojson res = ojson::array();
    const auto edges = detect_edge_states(open_chain_hamiltonian(p, su.N), bulk_reference(p));
    for (const auto& s : edges) {
        const double w = s.site_probabilities(su.coupled_index());
        if (std::abs(s.energy) >= 2.0 * su.t_w - 1e-3) continue;
        const Resonance r = find_resonance(su, p, s.energy, 1e-3);
        res.push_back({{"state_energy", s.energy}, {"coupled_weight", w}, {"peak_Omega", r.point.Omega},
                       {"peak_R", r.point.R}, {"interior", r.interior}});
    }
    out["edge_resonances"] = res;
    c.sink.json_file(c.file("reflection", ".json"), out);
}

void run_chern(Ctx& c) {
    const ModulationProtocol& m = *c.cfg.protocol;
    const LadderParams& p = c.cfg.params;
    const std::size_t Nk = c.grid_k();
    const std::size_t Nt = c.grid_t();
    const ChernSet cs = chern_numbers(p, m, Nk, Nt, c.opts.threads);
    ojson out = c.header();
    out["chern"] = {cs.c[0], cs.c[1], cs.c[2], cs.c[3]};
    out["grid"] = {Nk, Nt};
    out["protocol"] = protocol_json(m);
    out["boundaries"] = boundaries_json(p);
    c.sink.json_file(c.file("chern", ".json"), out);

    const double period = m.loop_period();
    Table path{{"t", "G", "delta"}, {}};
    for (std::size_t j = 0; j <= Nt; ++j) {
        const double t = period * static_cast<double>(j) / static_cast<double>(Nt);
        const LadderParams q = modulated_params(p, m, t);
        path.add({num(t), num(q.G), num(q.delta)});
    }
    c.sink.csv(c.file("loop", ".csv"), path);
    c.sink.plot({c.file("loop", ".csv"), "lines", "G", {"delta"}, c.cfg.title + " loop"});

    // Bands along (0,0) -> (pi,0) -> (pi,P/2) -> (0,P/2) -> (0,0) in (k, t),
    // with the detuning on (E) and off (E0).
    ModulationProtocol flat = m;
    flat.delta_tilde = 0.0;
    const std::size_t seg = std::max<std::size_t>(Nk / 4, 2);
    const std::array<std::pair<double, double>, 5> corners{
        {{0.0, 0.0}, {pi, 0.0}, {pi, period / 2}, {0.0, period / 2}, {0.0, 0.0}}};
    Table bands{{"s", "k", "t", "E1", "E2", "E3", "E4", "E01", "E02", "E03", "E04"}, {}};
    for (std::size_t sgi = 0; sgi < 4; ++sgi) {
        for (std::size_t i = 0; i < seg + (sgi == 3 ? 1 : 0); ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(seg);
            const double k = corners[sgi].first + f * (corners[sgi + 1].first - corners[sgi].first);
            const double t = corners[sgi].second + f * (corners[sgi + 1].second - corners[sgi].second);
            const double s = static_cast<double>(sgi) + f;
            const std::array<double, 1> kk{k};
            const auto e = band_structure(modulated_params(p, m, t), kk).energies[0];
            const auto e0 = band_structure(modulated_params(p, flat, t), kk).energies[0];
            bands.add({num(s), num(k), num(t), num(e(0)), num(e(1)), num(e(2)), num(e(3)), num(e0(0)),
                       num(e0(1)), num(e0(2)), num(e0(3))});
        }
    }
    c.sink.csv(c.file("path_bands", ".csv"), bands);
    c.sink.plot({c.file("path_bands", ".csv"), "lines", "s", {"E1", "E2", "E3", "E4", "E01", "E02", "E03", "E04"},
                 c.cfg.title + " bands"});
}

void run_pump(Ctx& c) {
    const ModulationProtocol& m = *c.cfg.protocol;
    const LadderParams& p = c.cfg.params;
    const std::size_t N = c.cfg.N;
    const double period = m.loop_period();
    ojson out = c.header();
    out["protocol"] = protocol_json(m);
    out["N"] = N;
    if (c.cfg.pump.instantaneous) {
        const std::size_t Nt = c.grid_t();
        const TrackedSpectrum ts = instantaneous_spectrum(p, m, N, Nt);
        Table spec{{"t"}, {}};
        for (const auto& col : band_columns("E", 4 * N)) spec.header.push_back(col);
        Table tr{{"t", "index", "energy", "overlap", "flagged", "center_of_mass"}, {}};
        Table dist{{"t"}, {}};
        for (const auto& col : band_columns("P", N, 0)) dist.header.push_back(col);
        const std::set<std::size_t> flagged(ts.crossings.begin(), ts.crossings.end());
        for (std::size_t i = 0; i < ts.times.size(); ++i) {
            std::vector<std::string> row{num(ts.times[i])};
            for (Eigen::Index n = 0; n < ts.energies[i].size(); ++n) row.push_back(num(ts.energies[i](n)));
            spec.add(std::move(row));
            tr.add({num(ts.times[i]), num(ts.tracked_index_path[i]), num(ts.tracked_energy[i]),
                    num(ts.tracked_overlap[i]), num(flagged.count(i) ? 1 : 0),
                    num(center_of_mass(ts.tracked_distribution[i]))});
            const Eigen::VectorXd cp = cell_probabilities(ts.tracked_states[i]);
            std::vector<std::string> drow{num(ts.times[i])};
            for (Eigen::Index j = 0; j < cp.size(); ++j) drow.push_back(num(cp(j)));
            dist.add(std::move(drow));
        }
        c.sink.csv(c.file("instantaneous", ".csv"), spec);
        c.sink.csv(c.file("tracked", ".csv"), tr);
        c.sink.csv(c.file("tracked_cells", ".csv"), dist);
        c.sink.plot({c.file("instantaneous", ".csv"), "lines", "t", band_columns("E", 4 * N), c.cfg.title});
        c.sink.plot({c.file("tracked", ".csv"), "points", "t", {"energy"}, c.cfg.title + " tracked state"});
        c.sink.plot({c.file("tracked", ".csv"), "lines", "t", {"center_of_mass"}, c.cfg.title + " tracked position"});
        ojson crossings = ojson::array();
        for (std::size_t i : ts.crossings) crossings.push_back(ts.times[i] / period);
        out["tracked_crossings_over_period"] = crossings;
        out["tracked_displacement"] =
            center_of_mass(ts.tracked_distribution.back()) - center_of_mass(ts.tracked_distribution.front());
    }
    if (c.cfg.pump.evolve) {
        const double dt = period / static_cast<double>(c.cfg.pump.steps_per_period);
        const Eigen::Index start = mode_index(c.cfg.pump.start_cell, c.cfg.pump.start_site);
        if (c.cfg.pump.start_cell >= N) throw ConfigError("pump.start_cell outside the chain");
        const EvolutionResult r = evolve(p, m, N, basis_state(N, start), period, dt, c.cfg.pump.record_stride);
        Table t{{"t"}, {}};
        for (const auto& col : mode_columns(N)) t.header.push_back(col);
        Table cells{{"t", "center_of_mass"}, {}};
        for (const auto& col : band_columns("P", N, 0)) cells.header.push_back(col);
        for (std::size_t i = 0; i < r.times.size(); ++i) {
            std::vector<std::string> row{num(r.times[i])};
            for (Eigen::Index n = 0; n < r.site_probabilities[i].size(); ++n) row.push_back(num(r.site_probabilities[i](n)));
            t.add(std::move(row));
            const Eigen::VectorXd cp = cell_probabilities(r.states[i]);
            std::vector<std::string> crow{num(r.times[i]), num(center_of_mass(r.site_probabilities[i]))};
            for (Eigen::Index j = 0; j < cp.size(); ++j) crow.push_back(num(cp(j)));
            cells.add(std::move(crow));
        }
        c.sink.csv(c.file("evolution", ".csv"), t);
        c.sink.csv(c.file("evolution_cells", ".csv"), cells);
        c.sink.plot({c.file("evolution_cells", ".csv"), "lines", "t", {"center_of_mass"}, c.cfg.title + " evolution"});
        out["dt"] = dt;
        out["displacement"] = pump_displacement(r, N);
        out["final_right_edge_weight"] = right_edge_weight(r.site_probabilities.back());
        out["norm_drift"] = r.norm_drift;
    }
    c.sink.json_file(c.file("pump", ".json"), out);
}

void run_drive(Ctx& c) {
    const DrivePlan periodic = periodic_drive_amplitudes(c.cfg.drive);
    const DrivePlan open = open_boundary_drive_amplitudes(c.cfg.drive);
    Table t{{"boundary", "j", "eps_re", "eps_im", "epsA_re", "epsA_im"}, {}};
    for (const DrivePlan* plan : {&periodic, &open}) {
        const std::string b = plan->boundary == Boundary::Periodic ? "periodic" : "open";
        for (Eigen::Index j = 0; j < plan->epsilon.size(); ++j) {
            t.add({b, num(static_cast<std::size_t>(j)), num(plan->epsilon(j).real()), num(plan->epsilon(j).imag()),
                   num(plan->epsilon_A(j).real()), num(plan->epsilon_A(j).imag())});
        }
    }
    c.sink.csv(c.file("drive", ".csv"), t);
    c.sink.plot({c.file("drive", ".csv"), "points", "j", {"eps_re", "epsA_re"}, c.cfg.title});
    ojson out = c.header();
    const DriveInputs& in = c.cfg.drive;
    out["inputs"] = {{"g1", in.g1}, {"g2", in.g2}, {"alpha_re", in.alpha.real()}, {"alpha_im", in.alpha.imag()},
                     {"Delta_a", in.Delta_a}, {"Delta_A", in.Delta_A}, {"kappa", in.kappa}, {"N", in.N}};
    out["coupling"] = {periodic.coupling().real(), periodic.coupling().imag()};
    out["residual_periodic"] = steady_state_residual(periodic);
    out["residual_open"] = steady_state_residual(open);
    out["approximation"] = periodic.approximation;
    c.sink.json_file(c.file("drive", ".json"), out);
}

}  // namespace

std::string to_string(ExperimentKind k) {
    for (const auto& [name, kind] : kind_table()) {
        if (kind == k) return name;
    }
    return "?";
}

std::optional<ExperimentKind> parse_kind(const std::string& s) {
    const auto it = kind_table().find(s);
    if (it == kind_table().end()) return std::nullopt;
    return it->second;
}

std::vector<double> Range::values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return v;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<ExperimentConfig> parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    try {
        std::vector<ExperimentConfig> out;
        if (!root.contains("cases")) {
            out.push_back(parse_one(root));
            return out;
        }
        const json cases = root.at("cases");
        if (!cases.is_array() || cases.empty()) throw ConfigError("config: \"cases\" must be a non-empty array");
        json base = root;
        base.erase("cases");
        std::set<std::string> labels;
        for (const json& c : cases) {
            if (!c.is_object() || !c.contains("label")) throw ConfigError("config: every case needs a \"label\"");
            json merged = base;
            merged.merge_patch(c);
            ExperimentConfig cfg = parse_one(merged);
            if (!labels.insert(cfg.label).second) throw ConfigError("config: duplicate case label \"" + cfg.label + "\"");
            out.push_back(std::move(cfg));
        }
        return out;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

std::vector<ExperimentConfig> load_config(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::vector<fs::path> run_experiments(const std::vector<ExperimentConfig>& cases, const RunOptions& opts) {
    if (cases.empty()) throw ConfigError("no experiments to run");
    Sink sink(opts.out_dir);
    for (const auto& cfg : cases) {
        Ctx ctx{cfg, opts, sink, cfg.prefix()};
        switch (cfg.kind) {
            case ExperimentKind::Bands: run_bands(ctx); break;
            case ExperimentKind::PhaseDiagram: run_phase_diagram(ctx); break;
            case ExperimentKind::Berry: run_berry(ctx); break;
            case ExperimentKind::Winding: run_winding(ctx); break;
            case ExperimentKind::SpectrumScan: run_spectrum_scan(ctx); break;
            case ExperimentKind::EdgeFields: run_edge_fields(ctx); break;
            case ExperimentKind::Ring: run_ring(ctx); break;
            case ExperimentKind::Scatter: run_scatter(ctx); break;
            case ExperimentKind::Chern: run_chern(ctx); break;
            case ExperimentKind::Pump: run_pump(ctx); break;
            case ExperimentKind::DrivePlan: run_drive(ctx); break;
        }
    }
    sink.plot_script("plot_" + cases.front().figure + ".py");
    return sink.written();
}

}  // namespace topoladder
