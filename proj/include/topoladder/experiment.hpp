// experiment.hpp: JSON experiment configs and the runners behind the CLI.
//
// A config file holds one experiment; an optional "cases" array lists
// overrides that are merged onto the base object, one run per case. Numeric
// coupling fields accept either a number or an object of coefficients over
// the symbols G_plus, G_minus, J2_c and const, e.g. {"G_plus": 0.5, "G_minus": -0.5}.

#pragma once

#include "topoladder/drive.hpp"
#include "topoladder/errors.hpp"
#include "topoladder/model.hpp"
#include "topoladder/scattering.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace topoladder {

inline constexpr const char* kConfigSchema = "topoladder/1";

// Malformed or incomplete configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class ExperimentKind {
    Bands,
    PhaseDiagram,
    Berry,
    Winding,
    SpectrumScan,
    EdgeFields,
    Ring,
    Scatter,
    Chern,
    Pump,
    DrivePlan
};

std::string to_string(ExperimentKind k);
std::optional<ExperimentKind> parse_kind(const std::string& s);

struct Range {
    double lo{0.0};
    double hi{0.0};
    std::size_t count{2};
    std::vector<double> values() const;
};

struct PumpSettings {
    bool instantaneous{true};
    bool evolve{true};
    std::size_t steps_per_period{20000};
    std::size_t record_stride{100};
    std::size_t start_cell{0};
    Site start_site{Site::B};
};

struct ExperimentConfig {
    std::string schema;
    ExperimentKind kind{ExperimentKind::Bands};
    std::string figure;  // output prefix
    std::string label;   // case label, appended to the prefix
    std::string title;

    LadderParams params;
    std::optional<ModulationProtocol> protocol;
    std::optional<ScatteringSetup> scattering;
    std::optional<RingParams> ring;
    std::optional<Range> scan_G;
    std::optional<Range> scan_J2;

    std::size_t grid_k{401};
    std::size_t grid_t{128};
    std::size_t N{10};
    std::size_t probe_points{kDefaultProbePoints};

    double target_energy{0.0};  // edge-fields selection
    double energy_window{0.05};

    PumpSettings pump;
    DriveInputs drive;

    std::string prefix() const { return figure + label; }
};

// Parses one file; returns one config per case. Throws ConfigError.
std::vector<ExperimentConfig> load_config(const std::filesystem::path& path);
std::vector<ExperimentConfig> parse_config(const std::string& text);

struct RunOptions {
    std::filesystem::path out_dir{"out"};
    unsigned threads{1};
    std::optional<std::size_t> grid_k;
    std::optional<std::size_t> grid_t;
};

// Runs every case, writes data files and one plot script; returns the paths
// written in order.
std::vector<std::filesystem::path> run_experiments(const std::vector<ExperimentConfig>& cases,
                                                   const RunOptions& opts);

// Formatting used for every emitted number.
std::string format_number(double x);

}  // namespace topoladder
