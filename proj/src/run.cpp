#include "fockecho/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fockecho/fragility.hpp"
#include "fockecho/parallel.hpp"

namespace fockecho {

namespace {

namespace fs = std::filesystem;

using OutputFiles = std::vector<std::pair<std::string, std::string>>;

bool has_kind(const std::vector<std::string>& kinds, const std::string& k) {
    return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

std::string echo_rows(const std::vector<double>& times, const std::vector<double>& m,
                      const std::string& label) {
    std::string out;
    for (std::size_t i = 0; i < times.size(); ++i)
        out += format_double(times[i]) + "," + format_double(m[i]) + "," + label + "\n";
    return out;
}

OutputFiles run_echo(const RunConfig& cfg) {
    const InitialState state = cfg.resolved_state();
    const std::vector<std::string> kinds = cfg.resolved_echo_kinds();
    const ModelParams p = cfg.model_for(state.peak_level());
    const EvolutionConfig ecfg{cfg.tol, cfg.dt_out, cfg.t_max, true};

    const bool want_raw = has_kind(kinds, "raw");
    const bool want_main = has_kind(kinds, "reduced") || has_kind(kinds, "cat");
    const bool want_inc = has_kind(kinds, "incoherent");
    const bool want_naive = has_kind(kinds, "naive");
    const bool need_primary = want_raw || want_main;
    const bool need_branches = want_inc || want_naive;

    StateVector psi0;
    std::optional<FullPropagator> prop_primary;
    StateVector d_primary;
    if (need_primary) {
        psi0 = state.family == InitialState::Family::Coherent
                   ? coherent_state(state.spec.alpha1, p)
                   : cat_state(state.spec, p);
        prop_primary.emplace(p, ecfg.tol, ecfg.check_truncation);
        d_primary = psi0;
    }
    IncoherentBranches branches;
    std::optional<FullPropagator> prop1, prop2;
    StateVector d1, d2;
    if (need_branches) {
        branches = incoherent_branches(state.spec, p);
        prop1.emplace(p, ecfg.tol, ecfg.check_truncation);
        prop2.emplace(p, ecfg.tol, ecfg.check_truncation);
        d1 = branches.branch1;
        d2 = branches.branch2;
    }

    const int n_steps = static_cast<int>(std::floor(cfg.t_max / cfg.dt_out + 1e-9));
    std::vector<double> times(n_steps + 1);
    std::vector<double> m_raw, m_main, m_inc, m_naive;
    for (int i = 0; i <= n_steps; ++i) {
        const double t = i * cfg.dt_out;
        times[i] = t;
        if (i > 0) {
            if (need_primary) prop_primary->advance(d_primary, cfg.dt_out);
            if (need_branches) {
                prop1->advance(d1, cfg.dt_out);
                prop2->advance(d2, cfg.dt_out);
            }
        }
        if (need_primary) {
            const StateVector c = evolve_free(psi0, t, p.omega0);
            if (want_raw) m_raw.push_back(loschmidt_raw(c, d_primary));
            if (want_main) m_main.push_back(loschmidt_reduced(c, d_primary));
        }
        if (need_branches) {
            const StateVector c1 = evolve_free(branches.branch1, t, p.omega0);
            const StateVector c2 = evolve_free(branches.branch2, t, p.omega0);
            if (want_inc)
                m_inc.push_back(incoherent_echo(c1, c2, d1, d2, branches.overlap_sq));
            if (want_naive)
                m_naive.push_back(loschmidt_naive(loschmidt_reduced(c1, d1),
                                                  loschmidt_reduced(c2, d2)));
        }
    }

    std::string csv = "t,m,kind\n";
    for (const auto& k : kinds) {
        if (k == "raw") csv += echo_rows(times, m_raw, "raw");
        else if (k == "reduced") csv += echo_rows(times, m_main, "reduced");
        else if (k == "cat") csv += echo_rows(times, m_main, "cat");
        else if (k == "incoherent") csv += echo_rows(times, m_inc, "incoherent");
        else if (k == "naive") csv += echo_rows(times, m_naive, "naive");
    }
    if (cfg.echo_markov) {
        const double e_state = state.spec.alpha1 * state.spec.alpha1 + 0.5;
        const Timescales ts = analytic_timescales(p, e_state);
        csv += echo_rows(times, markov_reference_curve(ts, times), "markov");
    }
    return {{"echo.csv", csv}};
}

OutputFiles run_evolve(const RunConfig& cfg) {
    const InitialState state = cfg.resolved_state();
    const ModelParams p = cfg.model_for(state.peak_level());
    const bool full = cfg.evolve_hamiltonian == "full";
    const StateVector psi0 = state.family == InitialState::Family::Coherent
                                 ? coherent_state(state.spec.alpha1, p)
                                 : cat_state(state.spec, p);
    const Hamiltonian which = full ? Hamiltonian::Full : Hamiltonian::Free;

    std::optional<FullPropagator> prop;
    if (full) prop.emplace(p, cfg.tol, true);
    StateVector psi = psi0;
    const int n_steps = static_cast<int>(std::floor(cfg.t_max / cfg.dt_out + 1e-9));
    std::string csv = "t,norm,energy,q_mean\n";
    for (int i = 0; i <= n_steps; ++i) {
        const double t = i * cfg.dt_out;
        if (full && i > 0) prop->advance(psi, cfg.dt_out);
        if (!full) psi = evolve_free(psi0, t, p.omega0);
        csv += format_double(t) + "," + format_double(psi.norm()) + "," +
               format_double(mean_energy(psi, which, p)) + "," +
               format_double(mean_position(psi)) + "\n";
    }
    return {{"evolve.csv", csv}};
}

OutputFiles run_density(const RunConfig& cfg) {
    const InitialState state = cfg.resolved_state();
    const ModelParams p = cfg.model_for(state.peak_level());
    const bool full = cfg.density_hamiltonian == "full";
    const StateVector psi0 = state.family == InitialState::Family::Coherent
                                 ? coherent_state(state.spec.alpha1, p)
                                 : cat_state(state.spec, p);

    const int nq =
        static_cast<int>(std::floor((cfg.density_q_max - cfg.density_q_min) /
                                    cfg.density_q_step + 1e-9));
    VectorR grid(nq + 1);
    for (int i = 0; i <= nq; ++i) grid[i] = cfg.density_q_min + i * cfg.density_q_step;

    std::optional<FullPropagator> prop;
    if (full) prop.emplace(p, cfg.tol, true);
    StateVector psi = psi0;
    const int n_steps = static_cast<int>(std::floor(cfg.t_max / cfg.dt_out + 1e-9));
    std::string csv = "t,q,rho\n";
    for (int i = 0; i <= n_steps; ++i) {
        const double t = i * cfg.dt_out;
        if (full && i > 0) prop->advance(psi, cfg.dt_out);
        if (!full) psi = evolve_free(psi0, t, p.omega0);
        const VectorR rho = position_density(psi, grid);
        for (int j = 0; j <= nq; ++j)
            csv += format_double(t) + "," + format_double(grid[j]) + "," +
                   format_double(rho[j]) + "\n";
    }
    return {{"density.csv", csv}};
}

OutputFiles run_lz_scan(const RunConfig& cfg) {
    struct Row {
        double e0, v, depth, p_lz;
    };
    const std::size_t n = cfg.lz_e0s.size() * cfg.lz_v_flips.size();
    std::vector<Row> rows(n);
    parallel_for(n, cfg.workers, [&](std::size_t i) {
        const double e0 = cfg.lz_e0s[i / cfg.lz_v_flips.size()];
        const double v = cfg.lz_v_flips[i % cfg.lz_v_flips.size()];
        ModelParams p = cfg.model_for(e0);
        p.v_flip = v;
        const InitialState state = InitialState::coherent(std::sqrt(e0 - 0.5));
        const EvolutionConfig ecfg{cfg.tol, cfg.dt_out, cfg.t_max, true};
        const LETrace trace = le_trace(state, p, ecfg);
        const CrossingInfo info = crossing_parameters(p, e0);
        rows[i] = {e0, v, first_step_depth(trace, info), info.p_lz};
    });
    std::string csv = "e0,v_flip,depth_measured,p_lz_analytic,rel_err\n";
    for (const Row& r : rows)
        csv += format_double(r.e0) + "," + format_double(r.v) + "," +
               format_double(r.depth) + "," + format_double(r.p_lz) + "," +
               format_double(std::abs(r.depth - r.p_lz) / r.p_lz) + "\n";
    return {{"lz_scan.csv", csv}};
}

OutputFiles run_fragility_scan(const RunConfig& cfg) {
    FragilityScanOptions opts;
    opts.t_window = cfg.frag_t_window;
    opts.fit_min_delta_e = cfg.frag_fit_min_delta_e;
    opts.workers = cfg.workers;
    opts.cutoff_override = cfg.cutoff;
    const EvolutionConfig ecfg{cfg.tol, cfg.dt_out, cfg.t_max, true};
    const FragilityScanResult res =
        fragility_scan(cfg.frag_e_bars, cfg.frag_delta_es, cfg.model_for(1.0), ecfg, opts);

    std::string csv = "e_bar,delta_e,m_bar_cat,m_bar_inc,delta_m\n";
    for (const FragilityRecord& r : res.records) {
        if (!r.feasible) {
            std::cerr << "warning: skipped infeasible grid point (e_bar="
                      << format_double(r.e_bar) << ", delta_e=" << format_double(r.delta_e)
                      << ")\n";
            continue;
        }
        csv += format_double(r.e_bar) + "," + format_double(r.delta_e) + "," +
               format_double(r.m_bar_cat) + "," + format_double(r.m_bar_inc) + "," +
               format_double(r.delta_m) + "\n";
    }
    std::string fit_csv = "nu,r_squared\n";
    if (res.fit)
        fit_csv += format_double(res.fit->nu) + "," + format_double(res.fit->r_squared) + "\n";
    return {{"fragility.csv", csv}, {"fit.csv", fit_csv}};
}

OutputFiles dispatch(const RunConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::Echo: return run_echo(cfg);
        case Experiment::Evolve: return run_evolve(cfg);
        case Experiment::Density: return run_density(cfg);
        case Experiment::LzScan: return run_lz_scan(cfg);
        case Experiment::FragilityScan: return run_fragility_scan(cfg);
    }
    throw config_error("unknown experiment");
}

}  // namespace

int run(const RunConfig& cfg) {
    std::vector<fs::path> written;
    try {
        cfg.validate();
        if (cfg.output_dir.empty()) throw config_error("no output directory set");
        OutputFiles files = dispatch(cfg);
        files.emplace_back("manifest", cfg.manifest());
        fs::create_directories(cfg.output_dir);
        for (const auto& [name, content] : files) {
            const fs::path path = fs::path(cfg.output_dir) / name;
            std::ofstream out(path, std::ios::binary);
            out << content;
            out.close();
            if (!out) throw std::runtime_error("cannot write " + path.string());
            written.push_back(path);
        }
        return 0;
    } catch (const config_error& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const truncation_error& ex) {
        for (const auto& f : written) fs::remove(f);
        std::cerr << "truncation error: " << ex.what() << "\n";
        return 3;
    } catch (const convergence_error& ex) {
        for (const auto& f : written) fs::remove(f);
        std::cerr << "convergence error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        for (const auto& f : written) fs::remove(f);
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

}  // namespace fockecho
