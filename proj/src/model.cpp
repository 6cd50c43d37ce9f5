#include "fockecho/model.hpp"

#include <cmath>
#include <numbers>

namespace fockecho {

ModelParams ModelParams::symmetric(double v_g, double v_flip, int cutoff) {
    if (v_g <= 0.0) throw std::invalid_argument("symmetric parabolas require v_g > 0");
    ModelParams p;
    p.e_up = 0.0;
    p.e_down = v_g * v_g / p.omega0;
    p.v_flip = v_flip;
    p.v_g = v_g;
    p.cutoff = cutoff;
    return p;
}

ModelParams ModelParams::standard(double v_flip, int cutoff) {
    return symmetric(10.0, v_flip, cutoff);
}

int required_cutoff(double n_peak) {
    if (n_peak < 0.0) n_peak = 0.0;
    return static_cast<int>(std::ceil(n_peak + 12.0 * std::sqrt(n_peak) + 20.0));
}

StateVector StateVector::zero(Eigen::Index levels) {
    StateVector s;
    s.up = VectorC::Zero(levels);
    s.down = VectorC::Zero(levels);
    return s;
}

double StateVector::norm() const { return std::sqrt(squared_norm()); }

Complex StateVector::inner(const StateVector& other) const {
    return up.dot(other.up) + down.dot(other.down);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero state");
    up /= n;
    down /= n;
}

double StateVector::tail_fraction() const {
    const Eigen::Index n = levels();
    const Eigen::Index count = std::max<Eigen::Index>(1, n / 20);
    const double total = squared_norm();
    if (total == 0.0) return 0.0;
    const double tail =
        up.tail(count).squaredNorm() + down.tail(count).squaredNorm();
    return tail / total;
}

namespace {

void check_same_dims(const StateVector& a, const StateVector& b) {
    if (a.up.size() != b.up.size() || a.down.size() != b.down.size())
        throw std::invalid_argument("state dimensions do not match");
}

}  // namespace

StateVector operator+(const StateVector& a, const StateVector& b) {
    check_same_dims(a, b);
    StateVector r;
    r.up = a.up + b.up;
    r.down = a.down + b.down;
    return r;
}

StateVector operator-(const StateVector& a, const StateVector& b) {
    check_same_dims(a, b);
    StateVector r;
    r.up = a.up - b.up;
    r.down = a.down - b.down;
    return r;
}

StateVector operator*(Complex s, const StateVector& a) {
    StateVector r;
    r.up = s * a.up;
    r.down = s * a.down;
    return r;
}

StateVector apply_hamiltonian(const StateVector& psi, Hamiltonian which, const ModelParams& p) {
    const Eigen::Index n = psi.levels();
    if (n != p.levels() || psi.down.size() != n)
        throw std::invalid_argument("state dimension does not match the cutoff");

    StateVector out = StateVector::zero(n);
    // oscillator term omega0*(n + 1/2) on both sectors
    for (Eigen::Index k = 0; k < n; ++k) {
        const double osc = p.omega0 * (static_cast<double>(k) + 0.5);
        out.up[k] = osc * psi.up[k];
        out.down[k] = osc * psi.down[k];
    }
    if (which == Hamiltonian::Free) return out;

    out.up += p.e_up * psi.up + p.v_flip * psi.down;
    out.down += p.e_down * psi.down + p.v_flip * psi.up;
    // -v_g (b^+ + b) on the down sector; the b^+ coupling out of the top
    // level is dropped together with its Hermitian partner (hard wall)
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double g = p.v_g * std::sqrt(static_cast<double>(k + 1));
        out.down[k + 1] -= g * psi.down[k];
        out.down[k] -= g * psi.down[k + 1];
    }
    return out;
}

double mean_energy(const StateVector& psi, Hamiltonian which, const ModelParams& p) {
    return psi.inner(apply_hamiltonian(psi, which, p)).real();
}

double mean_position(const StateVector& psi) {
    const Eigen::Index n = psi.levels();
    double acc = 0.0;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        const double s = std::sqrt(static_cast<double>(k + 1));
        acc += s * (std::conj(psi.up[k]) * psi.up[k + 1]).real();
        acc += s * (std::conj(psi.down[k]) * psi.down[k + 1]).real();
    }
    return std::numbers::sqrt2 * acc;
}

CrossingInfo crossing_parameters(const ModelParams& p, double e0) {
    if (p.v_g <= 0.0) throw std::invalid_argument("crossing geometry requires v_g > 0");
    const double ratio = p.e_down / p.v_g;
    CrossingInfo info;
    info.q_c = ratio / std::sqrt(2.0 * p.omega0);
    info.e_c = 0.25 * p.omega0 * ratio * ratio;
    if (e0 <= info.e_c)
        throw below_barrier_error("initial energy does not reach the crossing energy");
    info.q_dot_c = std::sqrt(2.0 * (e0 - info.e_c));
    const double denom = 2.0 * p.omega0 * p.omega0 * info.q_c * info.q_dot_c;
    info.p_lz = std::exp(-2.0 * std::numbers::pi * p.v_flip * p.v_flip / denom);
    return info;
}

VectorR position_density(const StateVector& psi, const VectorR& grid) {
    const Eigen::Index n = psi.levels();
    VectorR rho(grid.size());
    const double phi0_pref = std::pow(std::numbers::pi, -0.25);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double q = grid[i];
        if (!std::isfinite(q)) throw std::invalid_argument("grid point is not finite");
        // phi_{k+1} = sqrt(2/(k+1)) q phi_k - sqrt(k/(k+1)) phi_{k-1}
        double prev = 0.0;
        double cur = phi0_pref * std::exp(-0.5 * q * q);
        Complex s_up = psi.up[0] * cur;
        Complex s_down = psi.down[0] * cur;
        for (Eigen::Index k = 0; k + 1 < n; ++k) {
            const double kk = static_cast<double>(k);
            const double next =
                std::sqrt(2.0 / (kk + 1.0)) * q * cur - std::sqrt(kk / (kk + 1.0)) * prev;
            prev = cur;
            cur = next;
            s_up += psi.up[k + 1] * cur;
            s_down += psi.down[k + 1] * cur;
        }
        rho[i] = std::norm(s_up) + std::norm(s_down);
    }
    return rho;
}

}  // namespace fockecho
