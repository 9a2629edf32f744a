#pragma once

#include <optional>
#include <string>
#include <vector>

#include "armour/armour_loss.hpp"
#include "armour/design.hpp"
#include "armour/tube_transform.hpp"

namespace armour {

struct RunResult {
  TubeEquivalent tube;
  LossResult loss;
  std::optional<Lambda2Result> lambda2;  // present when the design has r_ac
  int transverse_order = 1;
  bool tail_converged = true;
  bool thin_shell_warning = false;  // t / R > 0.1
};

/// Full evaluation at design.solver.transverse_order. Errors are rethrown with
/// the failing stage prefixed; a tail bound above tail_tol |dS| throws
/// NumericalError.
RunResult run_single(const CableDesign& design);
/// Same with the transverse order overridden.
RunResult run_single(const CableDesign& design, int transverse_order);

struct SweepOptions {
  bool both_truncations = false;
  int exact_order = 17;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepRow {
  cplx value{};
  std::optional<RunResult> primary;
  std::optional<RunResult> exact;  // only with both_truncations
  std::string error;               // empty on success
  int error_code = 0;              // 2 validation, 3 numerical
};

/// One row per value, in input order whatever the thread count. A failing
/// row records its error and the sweep continues.
std::vector<SweepRow> run_sweep(const CableDesign& design, const SweepSpec& sweep,
                                const SweepOptions& options = {});

/// ARMOUR_LOSS_THREADS if set to a positive integer, else 0. Throws
/// ValidationError for any other value.
unsigned threads_from_environment();

}  // namespace armour
