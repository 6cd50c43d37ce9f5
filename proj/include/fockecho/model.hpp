#pragma once

#include <Eigen/Dense>
#include <complex>

#include "fockecho/errors.hpp"

namespace fockecho {

using Complex = std::complex<double>;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;

/// Fraction of probability tolerated near the top of the truncated basis.
inline constexpr double kTailEpsilon = 1e-10;

/// Model constants in natural units (hbar = m = 1, energies in units of
/// hbar*omega0, lengths in sqrt(hbar/(m*omega0)), times in 1/omega0).
///
/// The oscillator is the system; the two-level degree of freedom is the
/// environment. The environment couples to the oscillator through a linear
/// term -v_g (b^+ + b) acting on the |down> sector only, so the |down>
/// potential parabola is displaced and crosses the |up> one at q_c.
struct ModelParams {
    double omega0 = 1.0;    // oscillator frequency (natural units fix it to 1)
    double e_up = 0.0;      // energy of the |up> environment state
    double e_down = 100.0;  // energy of the |down> environment state
    double v_flip = 2.0;    // spin-flip amplitude (half the avoided-crossing gap)
    double v_g = 10.0;      // system-environment coupling
    int cutoff = 1;         // max Fock level kept (levels 0..cutoff)

    /// Parameters with parabolas symmetric about the crossing point:
    /// e_up - (e_down - v_g^2/omega0) = 0, with e_up = 0.
    static ModelParams symmetric(double v_g, double v_flip, int cutoff);

    /// Default preset: e_up = 0, e_down = 100, v_g = 10 (symmetric), v_flip = 2.
    static ModelParams standard(double v_flip = 2.0, int cutoff = 1);

    int levels() const { return cutoff + 1; }
};

/// Fock cutoff rule for a state whose highest-energy component sits at
/// level n_peak: room for the Poisson tail plus coupling-driven diffusion
/// along n.
int required_cutoff(double n_peak);

/// Amplitudes over the (spin ⊗ Fock) product basis, split by spin sector.
/// Constructed states and evolutions keep the squared norm at 1 within 1e-8;
/// operator applications (H|psi>) reuse the type for raw amplitude data.
struct StateVector {
    VectorC up;
    VectorC down;

    StateVector() = default;
    static StateVector zero(Eigen::Index levels);

    Eigen::Index levels() const { return up.size(); }
    double squared_norm() const { return up.squaredNorm() + down.squaredNorm(); }
    double norm() const;
    /// <this|other> over the full space (conjugate-linear in *this).
    Complex inner(const StateVector& other) const;
    void normalize();
    /// Probability carried by the top 5% of levels, relative to the total.
    double tail_fraction() const;
};

StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);
StateVector operator*(Complex s, const StateVector& a);
inline StateVector operator*(double s, const StateVector& a) { return Complex(s, 0.0) * a; }

enum class Hamiltonian { Free, Full };

/// H|psi>. Free applies only the oscillator term omega0*(n + 1/2).
/// Full adds the environment energies, the spin-flip coupling between the
/// sectors, and the linear coupling -v_g*(b^+ + b) on the |down> sector.
/// Levels above the cutoff are dropped (hard wall), which keeps H Hermitian.
StateVector apply_hamiltonian(const StateVector& psi, Hamiltonian which, const ModelParams& p);

/// Re<psi|H|psi> (units hbar*omega0).
double mean_energy(const StateVector& psi, Hamiltonian which, const ModelParams& p);

/// <psi|q|psi> with q = (b^+ + b)/sqrt(2).
double mean_position(const StateVector& psi);

/// Geometry of the avoided crossing and the asymptotic Landau-Zener stay
/// probability for a packet of total energy e0 passing through it.
struct CrossingInfo {
    double q_c = 0.0;      // crossing coordinate
    double e_c = 0.0;      // crossing energy
    double q_dot_c = 0.0;  // classical speed at the crossing
    double p_lz = 1.0;     // probability to stay on the same spin branch
};

/// Throws below_barrier_error when e0 <= e_c (the packet turns around
/// before reaching the crossing).
CrossingInfo crossing_parameters(const ModelParams& p, double e0);

/// |sum_n up_n phi_n(q)|^2 + |sum_n down_n phi_n(q)|^2 on the given grid,
/// with phi_n the unit-mass oscillator eigenfunctions evaluated through the
/// normalized two-term recurrence (stable to n ~ 1e3 for |q| <~ 50).
VectorR position_density(const StateVector& psi, const VectorR& grid);

}  // namespace fockecho
