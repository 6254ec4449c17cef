// topoladder: config-driven front end for the ladder toolkit.
//
//   topoladder <experiment> --config FILE [--out DIR] [--threads N]
//                           [--grid-k N] [--grid-t N]
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or config error.

#include "topoladder/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr const char* kExperiments[] = {"bands",         "phase-diagram", "berry", "winding",
                                        "spectrum-scan", "edge-fields",   "ring",  "scatter",
                                        "chern",         "pump",          "drive-plan"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optomechanical SSH ladder toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config;
    std::string out_dir = "out";
    unsigned threads = 1;
    std::size_t grid_k = 0;
    std::size_t grid_t = 0;
    std::string seed;
    app.add_option("--config", config, "experiment config (JSON)")->required();
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    auto* gk = app.add_option("--grid-k", grid_k, "override the k-grid size")->check(CLI::PositiveNumber);
    auto* gt = app.add_option("--grid-t", grid_t, "override the t-grid size")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "not supported: the pipeline has no randomness");

    for (const char* name : kExperiments) app.add_subcommand(name, std::string("run the ") + name + " experiment");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (seed_opt->count() > 0) {
        std::cerr << "topoladder: --seed is rejected; results are deterministic and take no seed\n";
        return 2;
    }

    const std::string kind = app.get_subcommands().front()->get_name();
    topoladder::RunOptions opts;
    opts.out_dir = out_dir;
    opts.threads = threads;
    if (gk->count() > 0) opts.grid_k = grid_k;
    if (gt->count() > 0) opts.grid_t = grid_t;

    try {
        const auto cases = topoladder::load_config(config);
        for (const auto& c : cases) {
            if (topoladder::to_string(c.kind) != kind) {
                throw topoladder::ConfigError("config " + config + " describes a \"" +
                                              topoladder::to_string(c.kind) + "\" experiment, not \"" +
                                              kind + "\"");
            }
        }
        const auto written = topoladder::run_experiments(cases, opts);
        for (const auto& p : written) std::cout << p.string() << "\n";
    } catch (const topoladder::ConfigError& e) {
        std::cerr << "topoladder: " << e.what() << "\n";
        return 2;
    } catch (const topoladder::Error& e) {
        std::cerr << "topoladder: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "topoladder: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
