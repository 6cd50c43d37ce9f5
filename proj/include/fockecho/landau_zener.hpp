#pragma once

#include <optional>
#include <utility>

#include "fockecho/loschmidt.hpp"

namespace fockecho {

/// Characteristic times of the echo decay, all in units 1/omega0.
/// tau_phi and tau_updown are +infinity when v_flip = 0.
struct Timescales {
    double tau_phi = 0.0;     // Markovian decay time from concatenated passages
    double tau_updown = 0.0;  // 1/|v_flip|
    double tau_down = 0.0;    // 2*pi*n1
    double n1 = 0.0;          // density of directly connected states (1/energy)
    double tau_z = 0.0;       // sudden-limit fluctuation scale at the crossing
    double tau_dqd = 0.0;     // quantum-diffusion Gaussian scale, 4*sqrt(e0*e_c)
                              // (kept verbatim as a diagnostic; not used in fits)
    std::optional<double> tau_g;  // Gaussian time, present once fitted
};

Timescales analytic_timescales(const ModelParams& p, double e0);

/// First two times at which the unperturbed packet q(t) = sqrt(2)*alpha*cos(omega0 t)
/// reaches the crossing coordinate. Throws extraction_error when it never does.
std::pair<double, double> classical_crossing_times(double alpha, double q_c,
                                                   double omega0 = 1.0);

/// Median of M(t) over [t_lo, t_hi]; throws extraction_error when the trace
/// has no samples there or does not reach t_hi.
double plateau_median(const LETrace& trace, double t_lo, double t_hi);

/// Post-first-passage plateau value: median of M(t) over
/// [t1 + 3 tau_z, t2 - 3 tau_z], with t1, t2 the first two classical
/// crossing times. The median suppresses crossing-scale noise; requires a
/// trace produced from a single Gaussian packet.
double first_step_depth(const LETrace& trace, const CrossingInfo& info);

/// Least-squares Gaussian time from -2 ln M(t) against t^2 over the prefix
/// until M first drops below 1/2. Points above the running minimum belong
/// to revivals and are skipped.
double gaussian_timescale_fit(const LETrace& trace);

/// exp(-t/tau_phi) on the given grid, for overlay output.
std::vector<double> markov_reference_curve(const Timescales& ts,
                                           const std::vector<double>& times);

}  // namespace fockecho
