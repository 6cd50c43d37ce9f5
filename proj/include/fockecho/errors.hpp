#pragma once

#include <stdexcept>
#include <string>

namespace fockecho {

/// Requested dynamics does not fit in the truncated Fock basis (tail guard).
struct truncation_error : std::runtime_error {
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Propagator could not reach the accuracy target within its step budget.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Initial energy lies below the crossing energy; the Landau-Zener picture
/// (crossing velocity, stay probability) is undefined there.
struct below_barrier_error : std::invalid_argument {
    explicit below_barrier_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Trace analysis could not locate the requested feature (window empty,
/// trajectory never reaches the crossing, ...).
struct extraction_error : std::runtime_error {
    explicit extraction_error(const std::string& what) : std::runtime_error(what) {}
};

/// Trace does not enter the domain required by a fit (e.g. never decays
/// below the fit threshold).
struct fit_domain_error : std::runtime_error {
    explicit fit_domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or inconsistent run configuration (maps to CLI exit status 2).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fockecho
