#include "fockecho/states.hpp"

#include <cmath>

namespace fockecho {

CatSpec cat_spec_from_energy(double e_bar, double delta_e, bool antisymmetric) {
    if (delta_e < 0.0) throw std::invalid_argument("delta_e must be non-negative");
    const double a1_sq = e_bar + 0.5 * delta_e - 0.5;
    const double a2_sq = e_bar - 0.5 * delta_e - 0.5;
    if (a1_sq < 0.0 || a2_sq < 0.0)
        throw std::invalid_argument("(e_bar, delta_e) does not admit real displacements");
    CatSpec spec;
    spec.alpha1 = std::sqrt(a1_sq);
    spec.alpha2 = antisymmetric ? -std::sqrt(a2_sq) : std::sqrt(a2_sq);
    return spec;
}

namespace {

void check_tail(const StateVector& psi, const char* what) {
    if (psi.tail_fraction() >= kTailEpsilon)
        throw truncation_error(std::string(what) + ": cutoff too small for the requested state");
}

}  // namespace

StateVector coherent_state(double alpha, const ModelParams& p) {
    StateVector psi = StateVector::zero(p.levels());
    if (alpha == 0.0) {
        psi.up[0] = 1.0;
        return psi;
    }
    const double log_abs = std::log(std::abs(alpha));
    const double sign = alpha < 0.0 ? -1.0 : 1.0;
    double sgn = 1.0;
    for (int n = 0; n < p.levels(); ++n) {
        const double log_mag =
            -0.5 * alpha * alpha + n * log_abs - 0.5 * std::lgamma(n + 1.0);
        psi.up[n] = sgn * std::exp(log_mag);
        sgn *= sign;
    }
    check_tail(psi, "coherent_state");
    psi.normalize();
    return psi;
}

StateVector cat_state(const CatSpec& spec, const ModelParams& p) {
    const StateVector a = coherent_state(spec.alpha1, p);
    const StateVector b = coherent_state(spec.alpha2, p);
    StateVector psi = a + b;
    check_tail(psi, "cat_state");
    psi.normalize();
    return psi;
}

IncoherentBranches incoherent_branches(const CatSpec& spec, const ModelParams& p) {
    IncoherentBranches out;
    out.branch1 = coherent_state(spec.alpha1, p);
    out.branch2 = coherent_state(spec.alpha2, p);
    const double d = spec.alpha1 - spec.alpha2;
    out.overlap_sq = std::exp(-d * d);
    out.delta_sq_over_n2 = 2.0 * (3.0 + out.overlap_sq);
    return out;
}

}  // namespace fockecho
