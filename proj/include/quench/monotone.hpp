#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quench/errors.hpp"

namespace quench {

// Shift of the monotone scheme -U'' - cU' + 5U = (5 + mu) U - U^3. With
// shift 5 the right-hand side is increasing in U on [0, 1] for both signs
// of mu, which is what makes the iterates monotone.
inline constexpr double kMonotoneShift = 5.0;

// Largest admissible positive increment U_{n+1} - U_n.
inline constexpr double kMonotoneViolationLimit = 1e-12;

struct IterationReport {
  std::size_t iterations = 0;
  double final_update = 0.0;
  double final_residual = 0.0;
  double monotone_violation = 0.0;
};

struct IterationOptions {
  double tol = 1e-10;
  std::size_t max_iterations = 200000;
  // Stop only once the discrete residual is also below residual_factor * tol.
  double residual_factor = 100.0;
};

// Process-wide maximum of every positive iterate increment observed by any
// monotone solve since start-up (or the last reset).
double max_monotone_violation();
void reset_monotone_violation();
void record_monotone_violation(double v);

inline double reaction(double mu, double u) { return (kMonotoneShift + mu) * u - u * u * u; }

namespace detail {

std::string describe(const IterationReport& r);

/**
 * Runs U_{n+1} = A^{-1}[(5 + mu) U_n - U_n^3 + B(g)] from `u` (which must be
 * a discrete supersolution) until the sup-norm update drops below tol and
 * the residual below residual_factor * tol.
 *
 * `solve(rhs)` overwrites rhs with A^{-1}(rhs + B(g)); `residual(u)` returns
 * sup |A u - B(g) - F(u)|.
 */
template <typename Solve, typename Residual>
IterationReport monotone_iterate(std::vector<double>& u, std::span<const double> mu,
                                 Solve&& solve, Residual&& residual,
                                 const IterationOptions& opts) {
  if (!(opts.tol >= 1e-13)) throw ParameterError("monotone iteration: tol must be >= 1e-13");
  IterationReport rep;
  std::vector<double> next(u.size());
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    for (std::size_t p = 0; p < u.size(); ++p) next[p] = reaction(mu[p], u[p]);
    solve(std::span<double>(next));
    double update = 0.0;
    double increase = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) {
      const double d = next[p] - u[p];
      update = std::max(update, std::abs(d));
      increase = std::max(increase, d);
    }
    rep.iterations = it;
    rep.final_update = update;
    rep.monotone_violation = std::max(rep.monotone_violation, increase);
    record_monotone_violation(increase);
    if (increase > kMonotoneViolationLimit) {
      throw SchemeIntegrityError("monotone iterate increased by " + std::to_string(increase) +
                                 " at iteration " + std::to_string(it));
    }
    u.swap(next);
    if (update < opts.tol) {
      rep.final_residual = residual(std::span<const double>(u));
      if (rep.final_residual < opts.residual_factor * opts.tol) return rep;
    }
  }
  throw ConvergenceError("monotone iteration did not converge: " + describe(rep));
}

}  // namespace detail

}  // namespace quench
