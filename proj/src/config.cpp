#include "fockecho/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fockecho {

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Evolve: return "evolve";
        case Experiment::Echo: return "echo";
        case Experiment::LzScan: return "lz-scan";
        case Experiment::FragilityScan: return "fragility-scan";
        case Experiment::Density: return "density";
    }
    return "unknown";
}

Experiment experiment_from_name(const std::string& name) {
    if (name == "evolve") return Experiment::Evolve;
    if (name == "echo") return Experiment::Echo;
    if (name == "lz-scan") return Experiment::LzScan;
    if (name == "fragility-scan") return Experiment::FragilityScan;
    if (name == "density") return Experiment::Density;
    throw config_error("unknown experiment '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw config_error("invalid number for " + what + ": '" + text + "'");
    }
    if (pos != t.size() || !std::isfinite(v))
        throw config_error("invalid number for " + what + ": '" + text + "'");
    return v;
}

int parse_int(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(t, &pos);
    } catch (const std::exception&) {
        throw config_error("invalid integer for " + what + ": '" + text + "'");
    }
    if (pos != t.size()) throw config_error("invalid integer for " + what + ": '" + text + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& text, const std::string& what) {
    const std::string t = trim(text);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw config_error("invalid boolean for " + what + ": '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_double(item, what));
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    if (key == "experiment") {
        experiment = experiment_from_name(value);
    } else if (key == "model.e_up") {
        e_up = parse_double(value, key);
    } else if (key == "model.e_down") {
        e_down = parse_double(value, key);
    } else if (key == "model.v_g") {
        v_g = parse_double(value, key);
    } else if (key == "model.v_flip") {
        v_flip = parse_double(value, key);
    } else if (key == "model.cutoff") {
        if (value == "auto")
            cutoff.reset();
        else
            cutoff = parse_int(value, key);
    } else if (key == "evolution.tol") {
        tol = parse_double(value, key);
    } else if (key == "evolution.dt_out") {
        dt_out = parse_double(value, key);
    } else if (key == "evolution.t_max") {
        t_max = parse_double(value, key);
    } else if (key == "state.family") {
        family = value;
    } else if (key == "state.alpha") {
        alpha = parse_double(value, key);
    } else if (key == "state.e0") {
        e0 = parse_double(value, key);
    } else if (key == "state.alpha1") {
        alpha1 = parse_double(value, key);
    } else if (key == "state.alpha2") {
        alpha2 = parse_double(value, key);
    } else if (key == "state.e_bar") {
        e_bar = parse_double(value, key);
    } else if (key == "state.delta_e") {
        delta_e = parse_double(value, key);
    } else if (key == "state.antisymmetric") {
        antisymmetric = parse_bool(value, key);
    } else if (key == "echo.kinds") {
        echo_kinds = split_list(value);
    } else if (key == "echo.markov") {
        echo_markov = parse_bool(value, key);
    } else if (key == "lz.e0s") {
        lz_e0s = parse_double_list(value, key);
    } else if (key == "lz.v_flips") {
        lz_v_flips = parse_double_list(value, key);
    } else if (key == "fragility.e_bars") {
        frag_e_bars = parse_double_list(value, key);
    } else if (key == "fragility.delta_es") {
        frag_delta_es = parse_double_list(value, key);
    } else if (key == "fragility.t_window") {
        frag_t_window = parse_double(value, key);
    } else if (key == "fragility.fit_min_delta_e") {
        frag_fit_min_delta_e = parse_double(value, key);
    } else if (key == "evolve.hamiltonian") {
        evolve_hamiltonian = value;
    } else if (key == "density.hamiltonian") {
        density_hamiltonian = value;
    } else if (key == "density.q_min") {
        density_q_min = parse_double(value, key);
    } else if (key == "density.q_max") {
        density_q_max = parse_double(value, key);
    } else if (key == "density.q_step") {
        density_q_step = parse_double(value, key);
    } else if (key == "output_dir") {
        output_dir = value;
    } else if (key == "seed") {
        seed = parse_int(value, key);
    } else if (key == "workers") {
        workers = parse_int(value, key);
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

void RunConfig::apply_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        set(stripped.substr(0, eq), stripped.substr(eq + 1));
    }
}

void RunConfig::apply_preset(const std::string& name) {
    if (name == "fig1") {
        experiment = Experiment::Echo;
        family = "coherent";
        e0 = 200.5;
        t_max = 40.0;
        echo_kinds = {"reduced"};
        echo_markov = true;
    } else if (name == "fig3") {
        experiment = Experiment::LzScan;
        lz_e0s = {100.5, 225.5, 400.5};
        lz_v_flips = {1.0, 2.0, 3.0, 4.0};
        t_max = 6.3;
    } else if (name == "fig4a" || name == "fig4b") {
        experiment = Experiment::Echo;
        family = "cat";
        e_bar = 150.0;
        delta_e = name == "fig4a" ? 0.0 : 200.0;
        t_max = 20.0;
        echo_kinds = {"cat", "incoherent", "naive"};
    } else if (name == "fig5") {
        experiment = Experiment::FragilityScan;
        frag_e_bars = {150.0, 200.0, 250.0, 300.0};
        frag_delta_es = {0.0, 50.0, 100.0, 150.0, 200.0, 250.0, 300.0};
        frag_t_window = 20.0;
        frag_fit_min_delta_e = 100.0;
        t_max = 20.0;
    } else {
        throw config_error("unknown preset '" + name + "'");
    }
}

InitialState RunConfig::resolved_state() const {
    if (family == "coherent") {
        if (alpha1 || alpha2 || e_bar || delta_e || antisymmetric)
            throw config_error("coherent state takes state.alpha or state.e0 only");
        if (alpha.has_value() == e0.has_value())
            throw config_error("coherent state needs exactly one of state.alpha, state.e0");
        if (alpha) return InitialState::coherent(*alpha);
        if (*e0 < 0.5) throw config_error("state.e0 must be at least 0.5");
        return InitialState::coherent(std::sqrt(*e0 - 0.5));
    }
    if (family != "cat" && family != "incoherent")
        throw config_error("unknown state.family '" + family + "'");
    if (alpha || e0)
        throw config_error("superposition states take alpha1/alpha2 or e_bar/delta_e");
    const bool by_alpha = alpha1 || alpha2;
    const bool by_energy = e_bar || delta_e;
    if (by_alpha == by_energy)
        throw config_error(
            "superposition states need either state.alpha1+state.alpha2 or "
            "state.e_bar+state.delta_e");
    CatSpec spec;
    if (by_alpha) {
        if (!alpha1 || !alpha2)
            throw config_error("both state.alpha1 and state.alpha2 are required");
        if (antisymmetric)
            throw config_error("state.antisymmetric applies to the energy form only");
        spec = {*alpha1, *alpha2};
    } else {
        if (!e_bar || !delta_e)
            throw config_error("both state.e_bar and state.delta_e are required");
        try {
            spec = cat_spec_from_energy(*e_bar, *delta_e,
                                        antisymmetric.value_or(*delta_e == 0.0));
        } catch (const std::invalid_argument& ex) {
            throw config_error(ex.what());
        }
    }
    return family == "cat" ? InitialState::cat(spec) : InitialState::incoherent(spec);
}

ModelParams RunConfig::model_for(double n_peak) const {
    ModelParams p;
    p.e_up = e_up;
    p.e_down = e_down;
    p.v_g = v_g;
    p.v_flip = v_flip;
    p.cutoff = cutoff ? *cutoff : required_cutoff(n_peak);
    if (p.cutoff < 1) throw config_error("model.cutoff must be at least 1");
    return p;
}

std::vector<std::string> RunConfig::resolved_echo_kinds() const {
    std::vector<std::string> kinds = echo_kinds;
    if (kinds.empty()) {
        if (family == "coherent") kinds = {"reduced"};
        else if (family == "cat") kinds = {"cat", "incoherent", "naive"};
        else kinds = {"incoherent"};
    }
    for (const auto& k : kinds) {
        const bool known =
            k == "raw" || k == "reduced" || k == "cat" || k == "incoherent" || k == "naive";
        if (!known) throw config_error("unknown echo kind '" + k + "'");
        if (family == "coherent" && k != "raw" && k != "reduced")
            throw config_error("echo kind '" + k + "' needs a superposition state");
        if (family != "coherent" && k == "reduced")
            throw config_error("echo kind 'reduced' applies to coherent states (use 'cat')");
        if (family == "incoherent" && (k == "cat" || k == "raw"))
            throw config_error("echo kind '" + k + "' is not defined for the incoherent family");
    }
    return kinds;
}

void RunConfig::validate() const {
    if (tol <= 0.0) throw config_error("evolution.tol must be positive");
    if (dt_out <= 0.0) throw config_error("evolution.dt_out must be positive");
    if (t_max < 0.0) throw config_error("evolution.t_max must be non-negative");
    if (workers < 1) throw config_error("workers must be at least 1");
    if (cutoff && *cutoff < 1) throw config_error("model.cutoff must be at least 1");

    switch (experiment) {
        case Experiment::Echo: {
            const InitialState s = resolved_state();
            resolved_echo_kinds();
            if (echo_markov) {
                if (s.family != InitialState::Family::Coherent)
                    throw config_error("echo.markov overlay requires a coherent state");
                if (v_g <= 0.0) throw config_error("echo.markov requires v_g > 0");
                const double e = s.spec.alpha1 * s.spec.alpha1 + 0.5;
                const double e_c = 0.25 * (e_down / v_g) * (e_down / v_g);
                if (e <= e_c)
                    throw config_error("echo.markov: state energy must exceed the crossing energy");
            }
            break;
        }
        case Experiment::Evolve: {
            resolved_state();
            if (evolve_hamiltonian != "free" && evolve_hamiltonian != "full")
                throw config_error("evolve.hamiltonian must be 'free' or 'full'");
            break;
        }
        case Experiment::Density: {
            resolved_state();
            if (density_hamiltonian != "free" && density_hamiltonian != "full")
                throw config_error("density.hamiltonian must be 'free' or 'full'");
            if (density_q_step <= 0.0) throw config_error("density.q_step must be positive");
            if (density_q_min >= density_q_max)
                throw config_error("density.q_min must be below density.q_max");
            break;
        }
        case Experiment::LzScan: {
            if (lz_e0s.empty() || lz_v_flips.empty())
                throw config_error("lz.e0s and lz.v_flips must be non-empty");
            if (v_g <= 0.0) throw config_error("lz-scan requires v_g > 0");
            const double e_c = 0.25 * (e_down / v_g) * (e_down / v_g);
            for (double e : lz_e0s) {
                if (e <= e_c)
                    throw config_error("lz.e0s entries must exceed the crossing energy " +
                                       format_double(e_c));
                if (e < 0.5) throw config_error("lz.e0s entries must be at least 0.5");
            }
            break;
        }
        case Experiment::FragilityScan: {
            if (frag_e_bars.empty() || frag_delta_es.empty())
                throw config_error("fragility.e_bars and fragility.delta_es must be non-empty");
            if (frag_t_window <= 0.0)
                throw config_error("fragility.t_window must be positive");
            if (frag_fit_min_delta_e < 0.0)
                throw config_error("fragility.fit_min_delta_e must be non-negative");
            break;
        }
    }
}

std::string RunConfig::manifest() const {
    std::map<std::string, std::string> kv;
    kv["experiment"] = experiment_name(experiment);
    kv["model.e_up"] = format_double(e_up);
    kv["model.e_down"] = format_double(e_down);
    kv["model.v_g"] = format_double(v_g);
    kv["model.v_flip"] = format_double(v_flip);
    kv["model.cutoff"] = cutoff ? std::to_string(*cutoff) : std::string("auto");
    kv["evolution.tol"] = format_double(tol);
    kv["evolution.dt_out"] = format_double(dt_out);
    kv["evolution.t_max"] = format_double(t_max);
    kv["output_dir"] = output_dir;
    kv["seed"] = std::to_string(seed);
    kv["workers"] = std::to_string(workers);

    const auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            s += format_double(v[i]);
        }
        return s;
    };

    switch (experiment) {
        case Experiment::Echo:
        case Experiment::Evolve:
        case Experiment::Density: {
            const InitialState s = resolved_state();
            kv["state.family"] = family;
            if (s.family == InitialState::Family::Coherent) {
                kv["state.alpha"] = format_double(s.spec.alpha1);
            } else {
                kv["state.alpha1"] = format_double(s.spec.alpha1);
                kv["state.alpha2"] = format_double(s.spec.alpha2);
            }
            if (experiment == Experiment::Echo) {
                std::string kinds;
                for (const auto& k : resolved_echo_kinds()) {
                    if (!kinds.empty()) kinds += ",";
                    kinds += k;
                }
                kv["echo.kinds"] = kinds;
                kv["echo.markov"] = echo_markov ? "true" : "false";
            }
            if (experiment == Experiment::Evolve)
                kv["evolve.hamiltonian"] = evolve_hamiltonian;
            if (experiment == Experiment::Density) {
                kv["density.hamiltonian"] = density_hamiltonian;
                kv["density.q_min"] = format_double(density_q_min);
                kv["density.q_max"] = format_double(density_q_max);
                kv["density.q_step"] = format_double(density_q_step);
            }
            break;
        }
        case Experiment::LzScan:
            kv["lz.e0s"] = join(lz_e0s);
            kv["lz.v_flips"] = join(lz_v_flips);
            break;
        case Experiment::FragilityScan:
            kv["fragility.e_bars"] = join(frag_e_bars);
            kv["fragility.delta_es"] = join(frag_delta_es);
            kv["fragility.t_window"] = format_double(frag_t_window);
            kv["fragility.fit_min_delta_e"] = format_double(frag_fit_min_delta_e);
            break;
    }

    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

}  // namespace fockecho
