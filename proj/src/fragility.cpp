#include "fockecho/fragility.hpp"

#include <cmath>
#include <limits>

#include "fockecho/parallel.hpp"

namespace fockecho {

double mean_le(const LETrace& trace, double t_window) {
    if (t_window <= 0.0) throw std::invalid_argument("averaging window must be positive");
    if (trace.times.empty() || trace.times.front() != 0.0 ||
        trace.times.back() < t_window - 1e-9)
        throw std::invalid_argument("trace does not span the averaging window");
    double integral = 0.0;
    for (std::size_t i = 1; i < trace.times.size(); ++i) {
        const double t0 = trace.times[i - 1];
        if (t0 >= t_window) break;
        double t1 = trace.times[i];
        double m1 = trace.m[i];
        if (t1 > t_window) {
            // linear interpolation for the final partial interval
            const double w = (t_window - t0) / (t1 - t0);
            m1 = trace.m[i - 1] + w * (trace.m[i] - trace.m[i - 1]);
            t1 = t_window;
        }
        integral += 0.5 * (trace.m[i - 1] + m1) * (t1 - t0);
    }
    return integral / t_window;
}

FragilityRecord fragility_point(const CatSpec& spec, const ModelParams& p,
                                const EvolutionConfig& cfg, double t_window) {
    const SuperpositionTraces traces = superposition_traces(spec, p, cfg);
    FragilityRecord rec;
    rec.e_bar = spec.mean_energy();
    rec.delta_e = spec.delta_energy();
    rec.m_bar_cat = mean_le(traces.cat, t_window);
    rec.m_bar_inc = mean_le(traces.incoherent, t_window);
    rec.delta_m = std::abs(rec.m_bar_inc - rec.m_bar_cat);
    return rec;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate abscissae in line fit");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace

std::optional<ScalingFit> fit_fragility_scaling(const std::vector<FragilityRecord>& records,
                                                double fit_min_delta_e) {
    // group rows by e_bar, preserving grid order
    std::vector<double> row_energies;
    for (const auto& r : records) {
        bool seen = false;
        for (double e : row_energies) seen = seen || e == r.e_bar;
        if (!seen) row_energies.push_back(r.e_bar);
    }

    ScalingFit fit;
    std::vector<double> log_e, log_slope;
    for (double e_bar : row_energies) {
        std::vector<double> x, y;
        for (const auto& r : records) {
            if (r.e_bar != e_bar || !r.feasible) continue;
            if (r.delta_e < fit_min_delta_e - 1e-12 || r.delta_m <= 0.0) continue;
            x.push_back(r.delta_e);
            y.push_back(std::log(r.delta_m));
        }
        if (x.size() < 2) continue;
        const LineFit line = fit_line(x, y);
        fit.rows.push_back({e_bar, line.slope, line.intercept, line.r_squared,
                            static_cast<int>(x.size())});
        if (line.slope > 0.0) {
            log_e.push_back(std::log(e_bar));
            log_slope.push_back(std::log(line.slope));
        }
    }
    if (log_e.size() < 2) return std::nullopt;
    const LineFit across = fit_line(log_e, log_slope);
    fit.nu = -across.slope;
    fit.r_squared = across.r_squared;
    return fit;
}

FragilityScanResult fragility_scan(const std::vector<double>& e_bars,
                                   const std::vector<double>& delta_es,
                                   const ModelParams& p, const EvolutionConfig& cfg,
                                   const FragilityScanOptions& opts) {
    if (e_bars.empty() || delta_es.empty())
        throw std::invalid_argument("fragility scan grids must be non-empty");
    EvolutionConfig cfg_pt = cfg;
    cfg_pt.t_max = opts.t_window;

    const std::size_t n = e_bars.size() * delta_es.size();
    std::vector<FragilityRecord> records(n);
    std::vector<std::size_t> feasible_idx;
    for (std::size_t i = 0; i < n; ++i) {
        const double e_bar = e_bars[i / delta_es.size()];
        const double delta_e = delta_es[i % delta_es.size()];
        FragilityRecord& rec = records[i];
        rec.e_bar = e_bar;
        rec.delta_e = delta_e;
        if (e_bar - 0.5 * delta_e - 0.5 < 0.0) {
            rec.feasible = false;
            rec.m_bar_cat = rec.m_bar_inc = rec.delta_m =
                std::numeric_limits<double>::quiet_NaN();
        } else {
            feasible_idx.push_back(i);
        }
    }

    parallel_for(feasible_idx.size(), opts.workers, [&](std::size_t k) {
        const std::size_t i = feasible_idx[k];
        const CatSpec spec = cat_spec_from_energy(records[i].e_bar, records[i].delta_e,
                                                  records[i].delta_e == 0.0);
        ModelParams p_pt = p;
        p_pt.cutoff = opts.cutoff_override ? *opts.cutoff_override
                                           : required_cutoff(spec.peak_level());
        records[i] = fragility_point(spec, p_pt, cfg_pt, opts.t_window);
    });

    FragilityScanResult out;
    out.records = std::move(records);
    out.fit = fit_fragility_scaling(out.records, opts.fit_min_delta_e);
    return out;
}

}  // namespace fockecho
