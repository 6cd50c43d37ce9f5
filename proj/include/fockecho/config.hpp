#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fockecho/loschmidt.hpp"

namespace fockecho {

enum class Experiment { Evolve, Echo, LzScan, FragilityScan, Density };

std::string experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

/// Flat key-value run configuration. Unknown keys and malformed values are
/// rejected at parse time; cross-field consistency is enforced by validate().
struct RunConfig {
    Experiment experiment = Experiment::Echo;

    // model.*
    double e_up = 0.0;
    double e_down = 100.0;
    double v_g = 10.0;
    double v_flip = 2.0;
    std::optional<int> cutoff;  // empty = cutoff rule from the initial state

    // evolution.*
    double tol = 1e-9;
    double dt_out = 0.01;
    double t_max = 20.0;

    // state.*
    std::string family = "coherent";
    std::optional<double> alpha;
    std::optional<double> e0;
    std::optional<double> alpha1;
    std::optional<double> alpha2;
    std::optional<double> e_bar;
    std::optional<double> delta_e;
    std::optional<bool> antisymmetric;

    // echo.*
    std::vector<std::string> echo_kinds;  // empty = family default
    bool echo_markov = false;

    // lz.*
    std::vector<double> lz_e0s;
    std::vector<double> lz_v_flips;

    // fragility.*
    std::vector<double> frag_e_bars;
    std::vector<double> frag_delta_es;
    double frag_t_window = 20.0;
    double frag_fit_min_delta_e = 100.0;

    // evolve.* / density.*
    std::string evolve_hamiltonian = "full";
    std::string density_hamiltonian = "full";
    double density_q_min = -40.0;
    double density_q_max = 40.0;
    double density_q_step = 0.05;

    std::string output_dir;
    long seed = 0;
    int workers = 1;

    /// Apply one `key = value` assignment. Throws config_error on unknown
    /// keys or unparseable values.
    void set(const std::string& key, const std::string& value);

    /// Apply a line-oriented config file ('#' starts a comment line).
    void apply_file(const std::string& path);

    /// Apply a named preset (fig1, fig3, fig4a, fig4b, fig5).
    void apply_preset(const std::string& name);

    /// Cross-field validation; resolves nothing, only checks.
    void validate() const;

    /// Initial state resolved from the state.* keys (validated).
    InitialState resolved_state() const;

    /// Model parameters with the cutoff resolved for a given peak level.
    ModelParams model_for(double n_peak) const;

    /// Echo curve list resolved against the family defaults.
    std::vector<std::string> resolved_echo_kinds() const;

    /// Canonical `key = value` rendering of the resolved configuration,
    /// sorted by key; re-parseable as a config file.
    std::string manifest() const;
};

/// Parsing helpers shared with the CLI (strict: the whole token must parse).
double parse_double(const std::string& text, const std::string& what);
int parse_int(const std::string& text, const std::string& what);
bool parse_bool(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text, const std::string& what);
std::vector<std::string> split_list(const std::string& text);
std::string format_double(double v);

}  // namespace fockecho
