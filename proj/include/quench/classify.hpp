#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quench/front1d.hpp"
#include "quench/grid.hpp"
#include "quench/periodic_orbits.hpp"

namespace quench {

// P(c; kappa) = c^2/4 + pi^2/kappa^2, or c^2/4 for kappa = infinity.
double critical_quantity(double c, HalfPeriod kappa);

enum class Prediction { exists, not_exists, critical };
std::string to_string(Prediction p);

inline constexpr double kCriticalBand = 0.02;

Prediction predict(double c, HalfPeriod kappa);

enum class DecayTarget { value_to_zero, value_to_one };

// Least-squares slope of log|u| (or log|1 - u|) over the window, returned as
// a positive magnitude.
double fit_decay_rate(const Field1D& field, Interval window, DecayTarget target);

enum class Measured { nontrivial, trivial, inconclusive, not_run };
std::string to_string(Measured m);
Measured to_measured(Verdict v);

struct ClassificationRecord {
  double c;
  HalfPeriod kappa;
  double P;
  Prediction predicted;
  Measured measured;
  double wake_amplitude;  // NaN when not run
  std::optional<double> decay_rate_right;
  std::string error;  // non-empty when the cell's solver run failed

  // Predicted and measured verdicts are both definite and differ.
  bool disagrees() const;
};

struct SweepOptions {
  bool run_solvers = false;
  std::size_t workers = 1;
  double h = 0.05;
  double tol = 1e-10;
  double domain_tol = 1e-8;
  // Per-solve iteration cap; near-critical cells slow down without bound.
  std::size_t max_iterations = 50000;
};

// Row-major over (c, kappa): record k is (c_grid[k / nk], kappa_grid[k % nk]).
std::vector<ClassificationRecord> sweep(const std::vector<double>& c_grid,
                                        const std::vector<HalfPeriod>& kappa_grid,
                                        const SweepOptions& opts = {});

// CSV with columns c,kappa,P,predicted,measured,wake_amplitude.
void write_sweep_csv(std::ostream& os, const std::vector<ClassificationRecord>& records,
                     const std::string& comment = {});

}  // namespace quench
