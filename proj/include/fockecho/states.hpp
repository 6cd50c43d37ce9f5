#pragma once

#include "fockecho/model.hpp"

namespace fockecho {

/// Two real displacements defining a superposition of Gaussian packets.
/// Energies of the components are E_i = alpha_i^2 + 1/2, so
/// mean_energy = (alpha1^2 + alpha2^2 + 1)/2 and delta_energy = |alpha1^2 - alpha2^2|.
struct CatSpec {
    double alpha1 = 0.0;
    double alpha2 = 0.0;

    double mean_energy() const { return 0.5 * (alpha1 * alpha1 + alpha2 * alpha2 + 1.0); }
    double delta_energy() const { return std::abs(alpha1 * alpha1 - alpha2 * alpha2); }
    /// Highest-energy component level, used by the cutoff rule.
    double peak_level() const { return std::max(alpha1 * alpha1, alpha2 * alpha2) + 0.5; }
    CatSpec swapped() const { return {alpha2, alpha1}; }
};

/// Displacements from (mean energy, energy separation):
/// alpha1^2 = e_bar + delta_e/2 - 1/2, alpha2^2 = e_bar - delta_e/2 - 1/2.
/// With antisymmetric set, alpha2 takes the negative root (the spatially
/// antisymmetric arrangement used when delta_e = 0).
CatSpec cat_spec_from_energy(double e_bar, double delta_e, bool antisymmetric = false);

/// Gaussian packet |alpha> on the |up> sector: amplitudes
/// exp(-alpha^2/2) alpha^n / sqrt(n!), evaluated in log space and
/// renormalized to absorb the (guarded) truncation loss.
StateVector coherent_state(double alpha, const ModelParams& p);

/// Phase-coherent superposition of two Gaussian packets, renormalized
/// numerically so that nearly degenerate displacements remain valid states.
StateVector cat_state(const CatSpec& spec, const ModelParams& p);

/// Data needed for the closed-form echo of the phase-averaged (incoherent)
/// superposition: the two separately normalized branches and the analytic
/// weights. No random numbers are drawn; phase averaging is exact downstream.
struct IncoherentBranches {
    StateVector branch1;
    StateVector branch2;
    double overlap_sq = 1.0;         // |<alpha1|alpha2>|^2 = exp(-|alpha1-alpha2|^2)
    double delta_sq_over_n2 = 8.0;   // 2*(3 + overlap_sq)
};

IncoherentBranches incoherent_branches(const CatSpec& spec, const ModelParams& p);

}  // namespace fockecho
