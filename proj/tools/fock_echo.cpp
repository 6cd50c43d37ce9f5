#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fockecho/run.hpp"

namespace {

const std::vector<std::pair<std::string, std::string>> kExperiments = {
    {"evolve", "Evolve one state and record norm, energy and mean position"},
    {"echo", "Loschmidt-echo time series for a coherent, cat or incoherent state"},
    {"lz-scan", "First-step depth vs Landau-Zener probability over an (E0, V) grid"},
    {"fragility-scan", "Mean-echo difference of cat vs incoherent states over an energy grid"},
    {"density", "Position-space probability density over time"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loschmidt-echo simulator for an oscillator coupled to a two-level system"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir;
    std::vector<std::string> overrides;
    int workers = 0;

    for (const auto& [name, desc] : kExperiments) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--preset", preset, "named parameter preset (fig1|fig3|fig4a|fig4b|fig5)");
        sub->add_option("--set", overrides, "override a single key=value pair")
            ->take_all();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "worker threads for scans");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    fockecho::RunConfig cfg;
    try {
        const std::string experiment = app.get_subcommands().front()->get_name();
        if (!preset.empty()) {
            cfg.apply_preset(preset);
            if (fockecho::experiment_name(cfg.experiment) != experiment)
                throw fockecho::config_error("preset '" + preset + "' belongs to the '" +
                                             fockecho::experiment_name(cfg.experiment) +
                                             "' experiment");
        }
        if (!config_path.empty()) cfg.apply_file(config_path);
        for (const std::string& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw fockecho::config_error("--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (fockecho::experiment_name(cfg.experiment) != experiment)
            throw fockecho::config_error("config requests experiment '" +
                                         fockecho::experiment_name(cfg.experiment) +
                                         "' but the command line says '" + experiment + "'");
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (workers > 0) cfg.workers = workers;
    } catch (const fockecho::config_error& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    }
    return fockecho::run(cfg);
}
