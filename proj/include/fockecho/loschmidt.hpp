#pragma once

#include <string>
#include <vector>

#include "fockecho/propagator.hpp"
#include "fockecho/states.hpp"

namespace fockecho {

enum class EchoKind { Raw, Reduced, Incoherent, Naive };

/// Initial-state family plus its displacement data. For Coherent only
/// spec.alpha1 is meaningful.
struct InitialState {
    enum class Family { Coherent, Cat, Incoherent };
    Family family = Family::Coherent;
    CatSpec spec;

    static InitialState coherent(double alpha) {
        return {Family::Coherent, {alpha, alpha}};
    }
    static InitialState cat(const CatSpec& s) { return {Family::Cat, s}; }
    static InitialState incoherent(const CatSpec& s) { return {Family::Incoherent, s}; }

    double peak_level() const {
        return family == Family::Coherent ? spec.alpha1 * spec.alpha1 + 0.5
                                          : spec.peak_level();
    }
};

/// Echo time series M(t) with the configuration that produced it.
struct LETrace {
    std::vector<double> times;  // strictly increasing, starting at 0
    std::vector<double> m;      // values in [0, 1], m[0] = 1
    EchoKind kind = EchoKind::Reduced;
    ModelParams params;
    InitialState state;
};

/// |<psi|phi>|^2 over the full spin ⊗ Fock space.
double loschmidt_raw(const StateVector& psi, const StateVector& phi);

/// Environment-traced echo for a forward state psi confined to the |up>
/// sector: |sum_n conj(c_n) d_up_n|^2 + |sum_n conj(c_n) d_down_n|^2.
/// Real and non-negative by construction; never below the raw overlap.
double loschmidt_reduced(const StateVector& psi, const StateVector& phi);

/// Closed-form phase-averaged echo of the incoherent superposition, given
/// the free-evolved branches (c1, c2; pure |up>) and the fully evolved
/// branches (d1, d2) at matched time. All double sums factorize, so the
/// cost is linear in the cutoff; the branch count N enters only through
/// weight ratios and is absent from the interface.
double incoherent_echo(const StateVector& c1, const StateVector& c2,
                       const StateVector& d1, const StateVector& d2,
                       double overlap_sq);

/// One-shot evaluation at time t (evolves both branches from scratch).
double loschmidt_incoherent(const IncoherentBranches& b, double t,
                            const ModelParams& p, const EvolutionConfig& cfg);

/// Mean of the two single-packet echoes.
double loschmidt_naive(double m1, double m2);

/// Echo trace on the [0, t_max] grid with spacing dt_out. Forward "free"
/// amplitudes always come from the analytic phases; only the perturbed
/// branch is stepped numerically.
LETrace le_trace(const InitialState& initial, const ModelParams& p,
                 const EvolutionConfig& cfg);

/// Cat, incoherent and naive traces for one displacement pair, sharing the
/// three propagations (cat state + both branches).
struct SuperpositionTraces {
    LETrace cat;
    LETrace incoherent;
    LETrace naive;
};

SuperpositionTraces superposition_traces(const CatSpec& spec, const ModelParams& p,
                                         const EvolutionConfig& cfg);

/// Label used in CSV output: "cat" for the reduced echo of a cat state,
/// otherwise the kind name.
std::string trace_label(const LETrace& trace);

}  // namespace fockecho
