#pragma once

#include <optional>

#include "fockecho/landau_zener.hpp"

namespace fockecho {

/// Time-averaged echoes for one (e_bar, delta_e) point and their difference,
/// the fragility quantifier. Infeasible grid points (no real displacements)
/// carry feasible = false and NaN means.
struct FragilityRecord {
    double e_bar = 0.0;
    double delta_e = 0.0;
    double m_bar_cat = 0.0;
    double m_bar_inc = 0.0;
    double delta_m = 0.0;
    bool feasible = true;
};

/// Per-row regression of ln(delta_m) against delta_e over the fit window.
struct RowFit {
    double e_bar = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};

/// Exponent nu of slope(e_bar) = e_bar^(-nu), from a log-log regression of
/// the row slopes; r_squared refers to that regression.
struct ScalingFit {
    double nu = 0.0;
    double r_squared = 0.0;
    std::vector<RowFit> rows;
};

/// (1/T) * integral of M(t) over [0, T] by the trapezoid rule.
double mean_le(const LETrace& trace, double t_window);

/// Runs the cat and incoherent traces for `spec` and averages them over
/// [0, t_window]. cfg.t_max must cover t_window.
FragilityRecord fragility_point(const CatSpec& spec, const ModelParams& p,
                                const EvolutionConfig& cfg, double t_window = 20.0);

struct FragilityScanOptions {
    double t_window = 20.0;
    double fit_min_delta_e = 100.0;  // fit window for the exponential regime
    int workers = 1;
    std::optional<int> cutoff_override;  // default: cutoff rule per grid point
};

struct FragilityScanResult {
    std::vector<FragilityRecord> records;  // grid order: e_bar outer, delta_e inner
    std::optional<ScalingFit> fit;
};

/// Computes the full (e_bar, delta_e) grid in parallel, merging results in
/// grid order, then fits the exponential scaling. At delta_e = 0 the
/// spatially antisymmetric arrangement (alpha2 = -alpha1) is used.
FragilityScanResult fragility_scan(const std::vector<double>& e_bars,
                                   const std::vector<double>& delta_es,
                                   const ModelParams& p, const EvolutionConfig& cfg,
                                   const FragilityScanOptions& opts = {});

/// Scaling fit over precomputed records (exposed for synthetic inputs).
std::optional<ScalingFit> fit_fragility_scaling(const std::vector<FragilityRecord>& records,
                                                double fit_min_delta_e = 100.0);

}  // namespace fockecho
