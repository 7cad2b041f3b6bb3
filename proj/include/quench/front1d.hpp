#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quench/grid.hpp"
#include "quench/monotone.hpp"
#include "quench/operators.hpp"

namespace quench {

inline constexpr double kDefaultFrontH = 0.02;
inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kDefaultDomainTol = 1e-8;
inline constexpr Interval kDefaultProbe{-10.0, 10.0};

// First and last truncation lengths of the doubling schedule.
inline constexpr double kScheduleStart = 25.0;
inline constexpr double kScheduleEnd = 3200.0;

struct FrontSolution {
  Field1D field;
  IterationReport report;
};

// Monotone iteration for u'' + c u' + mu(x) u - u^3 = 0 on (-M, L) with
// u(-M) = 1, u(L) = 0, started from U = 1. M = 0 or L = 0 are allowed (the
// interface then coincides with a domain end).
FrontSolution solve_truncated_front(double c, double M, double L, double h = kDefaultFrontH,
                                    double tol = kDefaultTol,
                                    std::size_t max_iterations = IterationOptions{}.max_iterations);

// Same iteration on an explicit grid from a caller-supplied start, which must
// be a discrete supersolution with the given face data.
FrontSolution solve_front_from(double c, const Grid1D& grid, std::vector<double> start,
                               FaceData1D faces, const IterationOptions& opts);

// Monotone iteration with an explicit per-cell mu on any 1D grid.
FrontSolution solve_monotone_1d(double c, const Grid1D& grid, std::span<const double> mu,
                                std::vector<double> start, FaceData1D faces,
                                const IterationOptions& opts);

// sup |A u - B(g) - F(u)| for the front problem (c, faces) on u's grid.
double front_residual(const Field1D& u, double c, double left = 1.0, double right = 0.0);

struct ContinuedFront {
  Field1D field;
  double M_final;
  double L_final;
  std::size_t solves;
  double last_change;  // window change of the last accepted doubling
};

// Doubles M from 25 (at L = 25) until the field on `window` moves by less
// than domain_tol, then doubles L the same way. Throws ConvergenceError when
// either length would exceed 3200.
ContinuedFront continue_front(double c, double h = kDefaultFrontH, double tol = kDefaultTol,
                              Interval window = kDefaultProbe,
                              double domain_tol = kDefaultDomainTol);

enum class Verdict { nontrivial, trivial, inconclusive };
std::string to_string(Verdict v);

struct DichotomyVerdict {
  double c;
  Verdict verdict;
  double wake_amplitude;
  Interval probe_window;
  double M_final;
  double L_final;
};

// Distance from c = 2 inside which no verdict is claimed.
inline constexpr double kCriticalSpeedBand = 0.05;
inline constexpr double kDichotomyL = 30.0;

DichotomyVerdict verify_dichotomy(double c, Interval probe = kDefaultProbe,
                                  double h = kDefaultFrontH, double tol = kDefaultTol,
                                  double domain_tol = kDefaultDomainTol);

// Verdict thresholds on a wake amplitude relative to the far-field amplitude.
Verdict classify_amplitude(double wake, double far_field_amplitude);

// Sup over window of |a - b| for two fields whose grids share nodes, with
// each field extended by (left, right) outside its domain.
double window_change(const Field1D& a, const Field1D& b, Interval window, double left,
                     double right);

}  // namespace quench
