#pragma once

#include <vector>

#include "fockecho/model.hpp"

namespace fockecho {

struct EvolutionConfig {
    double tol = 1e-9;      // amplitude error budget per unit time
    double dt_out = 0.01;   // output sampling interval
    double t_max = 20.0;    // final time
    bool check_truncation = true;  // abort when probability piles up near the cutoff
};

/// exp(-i H_S t)|psi0>: each amplitude picks up exp(-i (n+1/2) omega0 t)
/// in both sectors. Exact to rounding.
StateVector evolve_free(const StateVector& psi0, double t, double omega0 = 1.0);

/// Propagates states under the full Hamiltonian by a Chebyshev expansion of
/// the matrix exponential on the Gershgorin-bounded spectrum, sub-stepping
/// so each polynomial stays short. The series is truncated when the
/// remaining Bessel-coefficient mass drops below the per-step error budget,
/// so the total amplitude error stays below tol * elapsed time; unitarity
/// follows to the same accuracy.
///
/// An instance owns scratch buffers: share one per thread, not across threads.
class FullPropagator {
public:
    FullPropagator(const ModelParams& p, double tol, bool check_truncation = true);

    /// Advance psi in place by dt (in units 1/omega0).
    void advance(StateVector& psi, double dt);

    double spectrum_min() const { return e_min_; }
    double spectrum_max() const { return e_max_; }

private:
    void apply_scaled(const StateVector& x, StateVector& out) const;
    void substep(StateVector& psi, double dt);
    void ensure_coeffs(double dt);

    ModelParams p_;
    double tol_;
    bool check_truncation_;
    VectorC sdiag_up_, sdiag_down_, shop_;  // (H - center)/half_width bands
    double sflip_ = 0.0;
    double e_min_ = 0.0, e_max_ = 0.0;
    double center_ = 0.0, half_width_ = 1.0;

    double coeff_dt_ = -1.0;
    std::vector<Complex> coeffs_;
    StateVector w0_, w1_, w2_, acc_;
};

/// One-shot wrapper: exp(-i H_full t)|psi0> within cfg.tol * t.
StateVector evolve_full(const StateVector& psi0, double t, const ModelParams& p,
                        const EvolutionConfig& cfg);

namespace detail {
/// J_0..J_kmax at argument z via the normalized backward (Miller) recurrence.
std::vector<double> bessel_j_sequence(int kmax, double z);
}  // namespace detail

}  // namespace fockecho
