#include "armour/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>

namespace armour {
namespace {

template <class E>
[[noreturn]] void rethrow_with(const char* stage, const E& e) {
  throw E(fmt::format("{}: {}", stage, e.what()));
}

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    rethrow_with(name, e);
  } catch (const DomainError& e) {
    rethrow_with(name, e);
  } catch (const NumericalError& e) {
    rethrow_with(name, e);
  }
}

}  // namespace

RunResult run_single(const CableDesign& design) {
  return run_single(design, design.solver.transverse_order);
}

RunResult run_single(const CableDesign& design, int transverse_order) {
  CableDesign d = design;
  d.solver.transverse_order = transverse_order;
  stage("design", [&] {
    d.validate();
    return 0;
  });

  RunResult out;
  out.transverse_order = transverse_order;
  out.tube = stage("tube_transform", [&] {
    return geometry(d.armour, TransverseOptions{transverse_order, d.solver.coupling});
  });
  out.thin_shell_warning = out.tube.t / out.tube.mean_radius > 0.1;
  out.loss = stage("armour_loss", [&] { return armour_loss(d.layout, out.tube, d.solver.m_max); });

  const double scale = std::abs(out.loss.delta_S);
  out.tail_converged = out.loss.tail_bound <= d.solver.tail_tol * scale;
  if (!out.tail_converged) {
    throw NumericalError(fmt::format(
        "armour_loss: harmonic tail {:.3e} VA/m exceeds tail_tol {:.1e} x |dS| at m_max = {}",
        out.loss.tail_bound, d.solver.tail_tol, d.solver.m_max));
  }
  if (d.r_ac) {
    out.lambda2 = stage("lambda2", [&] {
      return lambda2(out.loss, *d.r_ac, d.layout, d.solver.validity_factor);
    });
  }
  return out;
}

std::vector<SweepRow> run_sweep(const CableDesign& design, const SweepSpec& sweep,
                                const SweepOptions& options) {
  if (sweep.values.empty()) {
    throw ValidationError("sweep needs at least one value");
  }
  std::vector<SweepRow> rows(sweep.values.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = sweep.values[i];
      try {
        const CableDesign d = apply_sweep_value(design, sweep.parameter, row.value);
        row.primary = run_single(d);
        if (options.both_truncations) {
          row.exact = run_single(d, options.exact_order);
        }
      } catch (const ValidationError& e) {
        row.primary.reset();
        row.exact.reset();
        row.error = e.what();
        row.error_code = 2;
      } catch (const Error& e) {
        row.primary.reset();
        row.exact.reset();
        row.error = e.what();
        row.error_code = 3;
      }
    }
  };

  unsigned n = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  n = std::clamp<unsigned>(n, 1, static_cast<unsigned>(rows.size()));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned k = 0; k < n; ++k) {
      pool.emplace_back(work);
    }
  }
  return rows;
}

unsigned threads_from_environment() {
  const char* raw = std::getenv("ARMOUR_LOSS_THREADS");
  if (raw == nullptr || *raw == '\0') {
    return 0;
  }
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) {
    throw ValidationError(
        fmt::format("ARMOUR_LOSS_THREADS must be a positive integer (got '{}')", raw));
  }
  return static_cast<unsigned>(v);
}

}  // namespace armour
