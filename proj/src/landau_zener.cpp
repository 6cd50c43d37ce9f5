#include "fockecho/landau_zener.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fockecho {

Timescales analytic_timescales(const ModelParams& p, double e0) {
    const CrossingInfo info = crossing_parameters(p, e0);
    const double root = std::sqrt(info.e_c * (e0 - info.e_c));
    Timescales ts;
    ts.n1 = 1.0 / (4.0 * std::numbers::pi * root);
    ts.tau_down = 2.0 * std::numbers::pi * ts.n1;
    if (p.v_flip != 0.0) {
        ts.tau_updown = 1.0 / std::abs(p.v_flip);
        ts.tau_phi = 2.0 * root / (p.v_flip * p.v_flip);
    } else {
        ts.tau_updown = std::numeric_limits<double>::infinity();
        ts.tau_phi = std::numeric_limits<double>::infinity();
    }
    ts.tau_z = 1.0 / std::sqrt(2.0 * p.omega0 * p.omega0 * info.q_c * info.q_dot_c);
    ts.tau_dqd = 4.0 * std::sqrt(e0 * info.e_c);
    return ts;
}

std::pair<double, double> classical_crossing_times(double alpha, double q_c,
                                                   double omega0) {
    const double amp = std::numbers::sqrt2 * alpha;
    if (amp == 0.0) throw extraction_error("packet with zero amplitude never crosses");
    const double r = q_c / amp;
    if (r <= -1.0 || r >= 1.0)
        throw extraction_error("classical trajectory never reaches the crossing");
    const double t1 = std::acos(r) / omega0;
    return {t1, (2.0 * std::numbers::pi - std::acos(r)) / omega0};
}

double plateau_median(const LETrace& trace, double t_lo, double t_hi) {
    if (trace.times.empty() || trace.times.back() < t_hi)
        throw extraction_error("trace does not cover the requested window");
    std::vector<double> vals;
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        if (trace.times[i] >= t_lo && trace.times[i] <= t_hi) vals.push_back(trace.m[i]);
    if (vals.empty()) throw extraction_error("no samples inside the requested window");
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    return n % 2 == 1 ? vals[n / 2] : 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

double first_step_depth(const LETrace& trace, const CrossingInfo& info) {
    if (trace.state.family != InitialState::Family::Coherent)
        throw std::invalid_argument("first-step extraction expects a single-packet trace");
    const double alpha = trace.state.spec.alpha1;
    const auto [t1, t2] =
        classical_crossing_times(alpha, info.q_c, trace.params.omega0);
    const double tau_z =
        1.0 / std::sqrt(2.0 * trace.params.omega0 * trace.params.omega0 * info.q_c *
                        info.q_dot_c);
    return plateau_median(trace, t1 + 3.0 * tau_z, t2 - 3.0 * tau_z);
}

double gaussian_timescale_fit(const LETrace& trace) {
    // prefix window: up to and including the first sample below 1/2
    std::size_t end = 0;
    bool decayed = false;
    for (std::size_t i = 0; i < trace.m.size(); ++i) {
        if (trace.m[i] < 0.5) {
            end = i + 1;
            decayed = true;
            break;
        }
    }
    if (!decayed) throw fit_domain_error("trace never decays below 1/2");

    double sxx = 0.0, sxy = 0.0;
    double running_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < end; ++i) {
        const double m = trace.m[i];
        if (m > running_min + 1e-12) continue;  // revival point
        running_min = std::min(running_min, m);
        if (m <= 0.0) continue;
        const double x = trace.times[i] * trace.times[i];
        const double y = -2.0 * std::log(m);
        sxx += x * x;
        sxy += x * y;
    }
    if (sxx <= 0.0 || sxy <= 0.0)
        throw fit_domain_error("not enough decaying samples for a Gaussian fit");
    return std::sqrt(sxx / sxy);
}

std::vector<double> markov_reference_curve(const Timescales& ts,
                                           const std::vector<double>& times) {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = std::exp(-times[i] / ts.tau_phi);
    return out;
}

}  // namespace fockecho
