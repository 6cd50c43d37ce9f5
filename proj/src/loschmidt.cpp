#include "fockecho/loschmidt.hpp"

#include <cmath>

namespace fockecho {

namespace {

void check_dims(const StateVector& a, const StateVector& b) {
    if (a.levels() != b.levels())
        throw std::invalid_argument("echo operands have different dimensions");
}

void check_pure_up(const StateVector& psi) {
    if (psi.down.size() > 0 && psi.down.squaredNorm() > 1e-12)
        throw std::invalid_argument(
            "reduced echo requires the forward state to live in the |up> sector");
}

std::vector<double> time_grid(const EvolutionConfig& cfg) {
    if (cfg.dt_out <= 0.0) throw std::invalid_argument("dt_out must be positive");
    if (cfg.t_max < 0.0) throw std::invalid_argument("t_max must be non-negative");
    const int n = static_cast<int>(std::floor(cfg.t_max / cfg.dt_out + 1e-9));
    std::vector<double> t(n + 1);
    for (int i = 0; i <= n; ++i) t[i] = i * cfg.dt_out;
    return t;
}

}  // namespace

double loschmidt_raw(const StateVector& psi, const StateVector& phi) {
    check_dims(psi, phi);
    return std::norm(psi.inner(phi));
}

double loschmidt_reduced(const StateVector& psi, const StateVector& phi) {
    check_dims(psi, phi);
    check_pure_up(psi);
    return std::norm(psi.up.dot(phi.up)) + std::norm(psi.up.dot(phi.down));
}

double incoherent_echo(const StateVector& c1, const StateVector& c2,
                       const StateVector& d1, const StateVector& d2,
                       double overlap_sq) {
    check_dims(c1, d1);
    check_dims(c2, d2);
    check_pure_up(c1);
    check_pure_up(c2);
    // per-sector cross sums between free and perturbed branches
    const Complex a_up = c1.up.dot(d1.up), a_dn = c1.up.dot(d1.down);
    const Complex b_up = c2.up.dot(d2.up), b_dn = c2.up.dot(d2.down);
    const Complex c_up = c2.up.dot(d1.up), c_dn = c2.up.dot(d1.down);
    const Complex e_up = c1.up.dot(d2.up), e_dn = c1.up.dot(d2.down);
    const double same1 = std::norm(a_up) + std::norm(a_dn);
    const double same2 = std::norm(b_up) + std::norm(b_dn);
    const double cross12 = std::norm(c_up) + std::norm(c_dn);
    const double cross21 = std::norm(e_up) + std::norm(e_dn);
    const double interf = 2.0 * (a_up * std::conj(b_up) + a_dn * std::conj(b_dn)).real();
    // phase-averaged weights {2,1,1,1,1,2} over 2*(3 + overlap_sq)
    return (2.0 * same1 + 2.0 * same2 + cross12 + cross21 + interf) /
           (2.0 * (3.0 + overlap_sq));
}

double loschmidt_incoherent(const IncoherentBranches& b, double t,
                            const ModelParams& p, const EvolutionConfig& cfg) {
    const StateVector c1 = evolve_free(b.branch1, t, p.omega0);
    const StateVector c2 = evolve_free(b.branch2, t, p.omega0);
    const StateVector d1 = evolve_full(b.branch1, t, p, cfg);
    const StateVector d2 = evolve_full(b.branch2, t, p, cfg);
    return incoherent_echo(c1, c2, d1, d2, b.overlap_sq);
}

double loschmidt_naive(double m1, double m2) { return 0.5 * (m1 + m2); }

LETrace le_trace(const InitialState& initial, const ModelParams& p,
                 const EvolutionConfig& cfg) {
    using Family = InitialState::Family;
    if (initial.family == Family::Incoherent) {
        const IncoherentBranches b = incoherent_branches(initial.spec, p);
        FullPropagator prop1(p, cfg.tol, cfg.check_truncation);
        FullPropagator prop2(p, cfg.tol, cfg.check_truncation);
        StateVector d1 = b.branch1;
        StateVector d2 = b.branch2;
        LETrace trace{time_grid(cfg), {}, EchoKind::Incoherent, p, initial};
        trace.m.reserve(trace.times.size());
        for (std::size_t i = 0; i < trace.times.size(); ++i) {
            const double t = trace.times[i];
            if (i > 0) {
                prop1.advance(d1, cfg.dt_out);
                prop2.advance(d2, cfg.dt_out);
            }
            const StateVector c1 = evolve_free(b.branch1, t, p.omega0);
            const StateVector c2 = evolve_free(b.branch2, t, p.omega0);
            trace.m.push_back(incoherent_echo(c1, c2, d1, d2, b.overlap_sq));
        }
        return trace;
    }

    const StateVector psi0 = initial.family == Family::Coherent
                                 ? coherent_state(initial.spec.alpha1, p)
                                 : cat_state(initial.spec, p);
    FullPropagator prop(p, cfg.tol, cfg.check_truncation);
    StateVector d = psi0;
    LETrace trace{time_grid(cfg), {}, EchoKind::Reduced, p, initial};
    trace.m.reserve(trace.times.size());
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (i > 0) prop.advance(d, cfg.dt_out);
        const StateVector c = evolve_free(psi0, trace.times[i], p.omega0);
        trace.m.push_back(loschmidt_reduced(c, d));
    }
    return trace;
}

SuperpositionTraces superposition_traces(const CatSpec& spec, const ModelParams& p,
                                         const EvolutionConfig& cfg) {
    const StateVector cat0 = cat_state(spec, p);
    const IncoherentBranches b = incoherent_branches(spec, p);
    FullPropagator prop_cat(p, cfg.tol, cfg.check_truncation);
    FullPropagator prop1(p, cfg.tol, cfg.check_truncation);
    FullPropagator prop2(p, cfg.tol, cfg.check_truncation);
    StateVector d_cat = cat0;
    StateVector d1 = b.branch1;
    StateVector d2 = b.branch2;

    const std::vector<double> times = time_grid(cfg);
    SuperpositionTraces out;
    out.cat = {times, {}, EchoKind::Reduced, p, InitialState::cat(spec)};
    out.incoherent = {times, {}, EchoKind::Incoherent, p, InitialState::incoherent(spec)};
    out.naive = {times, {}, EchoKind::Naive, p, InitialState::incoherent(spec)};
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (i > 0) {
            prop_cat.advance(d_cat, cfg.dt_out);
            prop1.advance(d1, cfg.dt_out);
            prop2.advance(d2, cfg.dt_out);
        }
        const StateVector c_cat = evolve_free(cat0, t, p.omega0);
        const StateVector c1 = evolve_free(b.branch1, t, p.omega0);
        const StateVector c2 = evolve_free(b.branch2, t, p.omega0);
        out.cat.m.push_back(loschmidt_reduced(c_cat, d_cat));
        out.incoherent.m.push_back(incoherent_echo(c1, c2, d1, d2, b.overlap_sq));
        out.naive.m.push_back(
            loschmidt_naive(loschmidt_reduced(c1, d1), loschmidt_reduced(c2, d2)));
    }
    return out;
}

std::string trace_label(const LETrace& trace) {
    switch (trace.kind) {
        case EchoKind::Raw:
            return "raw";
        case EchoKind::Reduced:
            return trace.state.family == InitialState::Family::Cat ? "cat" : "reduced";
        case EchoKind::Incoherent:
            return "incoherent";
        case EchoKind::Naive:
            return "naive";
    }
    return "unknown";
}

}  // namespace fockecho
