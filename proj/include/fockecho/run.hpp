#pragma once

#include "fockecho/config.hpp"

namespace fockecho {

/// Executes the configured experiment and writes its CSV outputs plus the
/// resolved-config manifest into cfg.output_dir. All results are computed
/// before anything is written, so failed runs leave no partial files.
/// Returns the process exit status: 0 success, 2 configuration error,
/// 3 truncation/convergence failure, 1 anything else.
int run(const RunConfig& cfg);

}  // namespace fockecho
