#pragma once
#include <iosfwd>
#include <string>

#include "beamopt/runconfig.hpp"

namespace beamopt {

// Workflow entry points. Human-readable reporting goes to `out`, warnings and
// errors to `err`. Return value is the process exit code: 0 success,
// 1 validation error, 2 numerical failure, 3 oracle-check failure.

// Single-n report; a machine-readable row is appended to cfg.out_path if set.
int cmd_evaluate(const RunConfig& cfg, int n, std::ostream& out, std::ostream& err);

// Per-n curve and the ASE-maximizing exponent.
int cmd_optimize(const RunConfig& cfg, int n_min, int n_max, std::ostream& out,
                 std::ostream& err);

// Grid file -> CSV (to cfg.out_path if set, else to `out`).
int cmd_sweep(const RunConfig& cfg, const std::string& grid_path, std::ostream& out,
              std::ostream& err);

// Monte Carlo cross-checks of the closed forms: crossing intensities, the
// success-probability grid, and the ergodic rate. perturb_gain != 1 scales
// the analytic main-lobe gain to prove the harness can fail.
int cmd_validate(const RunConfig& cfg, double perturb_gain, std::ostream& out,
                 std::ostream& err);

}  // namespace beamopt
