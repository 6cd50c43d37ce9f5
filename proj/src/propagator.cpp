#include "fockecho/propagator.hpp"

#include <cmath>

namespace fockecho {

StateVector evolve_free(const StateVector& psi0, double t, double omega0) {
    StateVector psi = psi0;
    for (Eigen::Index n = 0; n < psi.levels(); ++n) {
        const Complex phase =
            std::polar(1.0, -omega0 * (static_cast<double>(n) + 0.5) * t);
        psi.up[n] *= phase;
        psi.down[n] *= phase;
    }
    return psi;
}

namespace detail {

std::vector<double> bessel_j_sequence(int kmax, double z) {
    std::vector<double> j(kmax + 1, 0.0);
    if (z <= 0.0) {
        j[0] = 1.0;
        return j;
    }
    // start the backward recurrence far enough above both kmax and z that
    // the seed value has washed out
    const int start = kmax + static_cast<int>(z) + 40;
    double fp1 = 0.0;
    double f = 1e-300;
    double norm_acc = 0.0;  // J0 + 2*sum_{k>0 even} Jk = 1
    for (int k = start; k >= 1; --k) {
        const double fm1 = (2.0 * k / z) * f - fp1;
        fp1 = f;
        f = fm1;
        const int m = k - 1;
        if (m <= kmax) j[m] = f;
        if (m > 0 && m % 2 == 0) norm_acc += 2.0 * f;
        if (std::abs(f) > 1e250) {
            const double scale = 1e-250;
            f *= scale;
            fp1 *= scale;
            norm_acc *= scale;
            for (double& v : j) v *= scale;
        }
    }
    norm_acc += j[0];
    for (double& v : j) v /= norm_acc;
    return j;
}

}  // namespace detail

FullPropagator::FullPropagator(const ModelParams& p, double tol, bool check_truncation)
    : p_(p), tol_(tol), check_truncation_(check_truncation) {
    if (tol_ <= 0.0) throw std::invalid_argument("tolerance must be positive");
    const int n = p_.levels();
    VectorR diag_up(n), diag_down(n), hop(std::max(0, n - 1));
    for (int k = 0; k < n; ++k) {
        const double osc = p_.omega0 * (k + 0.5);
        diag_up[k] = osc + p_.e_up;
        diag_down[k] = osc + p_.e_down;
    }
    for (int k = 0; k + 1 < n; ++k) hop[k] = p_.v_g * std::sqrt(k + 1.0);

    // Gershgorin bounds over the banded rows
    const double vf = std::abs(p_.v_flip);
    e_min_ = diag_up[0] - vf;
    e_max_ = diag_up[0] + vf;
    for (int k = 0; k < n; ++k) {
        const double lower = k > 0 ? std::abs(hop[k - 1]) : 0.0;
        const double upper = k + 1 < n ? std::abs(hop[k]) : 0.0;
        const double r_down = vf + lower + upper;
        e_min_ = std::min({e_min_, diag_up[k] - vf, diag_down[k] - r_down});
        e_max_ = std::max({e_max_, diag_up[k] + vf, diag_down[k] + r_down});
    }
    center_ = 0.5 * (e_max_ + e_min_);
    half_width_ = 0.5 * (e_max_ - e_min_) * (1.0 + 1e-9) + 1e-12;

    // scaled operator (H - center)/half_width, stored componentwise
    sdiag_up_ = ((diag_up.array() - center_) / half_width_).cast<Complex>();
    sdiag_down_ = ((diag_down.array() - center_) / half_width_).cast<Complex>();
    shop_ = (hop.array() / half_width_).cast<Complex>();
    sflip_ = p_.v_flip / half_width_;
}

void FullPropagator::apply_scaled(const StateVector& x, StateVector& out) const {
    out.up.array() = sdiag_up_.array() * x.up.array() + sflip_ * x.down.array();
    out.down.array() = sdiag_down_.array() * x.down.array() + sflip_ * x.up.array();
    const Eigen::Index m = x.levels() - 1;
    if (m > 0) {
        out.down.tail(m).array() -= shop_.array() * x.down.head(m).array();
        out.down.head(m).array() -= shop_.array() * x.down.tail(m).array();
    }
}

void FullPropagator::ensure_coeffs(double dt) {
    if (dt == coeff_dt_) return;
    const double z = half_width_ * dt;
    coeffs_.clear();
    if (z < 1e-14) {
        coeffs_.push_back(1.0);
        coeff_dt_ = dt;
        return;
    }
    const int k_hi = static_cast<int>(std::ceil(z)) + 60 +
                     static_cast<int>(2.0 * std::cbrt(z));
    if (k_hi > 200000)
        throw convergence_error("Chebyshev step budget exceeded; reduce the step size");
    const std::vector<double> j = detail::bessel_j_sequence(k_hi, z);
    // keep terms until the dropped coefficient mass fits the step budget
    const double budget = std::max(1e-2 * tol_ * dt, 1e-16);
    double tail = 0.0;
    int k_use = k_hi;
    for (int k = k_hi; k >= 1; --k) {
        tail += 2.0 * std::abs(j[k]);
        if (tail >= budget) {
            k_use = k;
            break;
        }
        k_use = k - 1;
    }
    coeffs_.resize(k_use + 1);
    const Complex mi(0.0, -1.0);
    Complex ph(1.0, 0.0);
    coeffs_[0] = j[0];
    for (int k = 1; k <= k_use; ++k) {
        ph *= mi;
        coeffs_[k] = 2.0 * ph * j[k];
    }
    coeff_dt_ = dt;
}

void FullPropagator::substep(StateVector& psi, double dt) {
    ensure_coeffs(dt);
    const Eigen::Index n = psi.levels();
    if (w0_.levels() != n) {
        w0_ = StateVector::zero(n);
        w1_ = StateVector::zero(n);
        w2_ = StateVector::zero(n);
        acc_ = StateVector::zero(n);
    }
    // acc = sum_k c_k T_k(H_scaled) psi via the three-term recurrence
    w0_ = psi;
    acc_.up = coeffs_[0] * w0_.up;
    acc_.down = coeffs_[0] * w0_.down;
    if (coeffs_.size() > 1) {
        apply_scaled(w0_, w1_);
        acc_.up += coeffs_[1] * w1_.up;
        acc_.down += coeffs_[1] * w1_.down;
        for (std::size_t k = 2; k < coeffs_.size(); ++k) {
            apply_scaled(w1_, w2_);
            w2_.up = 2.0 * w2_.up - w0_.up;
            w2_.down = 2.0 * w2_.down - w0_.down;
            acc_.up += coeffs_[k] * w2_.up;
            acc_.down += coeffs_[k] * w2_.down;
            std::swap(w0_.up, w1_.up);
            std::swap(w0_.down, w1_.down);
            std::swap(w1_.up, w2_.up);
            std::swap(w1_.down, w2_.down);
        }
    }
    const Complex phase = std::polar(1.0, -center_ * dt);
    psi.up = phase * acc_.up;
    psi.down = phase * acc_.down;

    if (check_truncation_ && psi.tail_fraction() >= kTailEpsilon)
        throw truncation_error("probability reached the top of the Fock basis during evolution");
}

void FullPropagator::advance(StateVector& psi, double dt) {
    if (psi.levels() != p_.levels())
        throw std::invalid_argument("state dimension does not match the cutoff");
    if (dt < 0.0) throw std::invalid_argument("dt must be non-negative");
    if (dt == 0.0) return;
    const double z_total = half_width_ * dt;
    const int n_sub = std::max(1, static_cast<int>(std::ceil(z_total / 32.0)));
    const double dt_sub = dt / n_sub;
    for (int i = 0; i < n_sub; ++i) substep(psi, dt_sub);
}

StateVector evolve_full(const StateVector& psi0, double t, const ModelParams& p,
                        const EvolutionConfig& cfg) {
    FullPropagator prop(p, cfg.tol, cfg.check_truncation);
    StateVector psi = psi0;
    prop.advance(psi, t);
    return psi;
}

}  // namespace fockecho
