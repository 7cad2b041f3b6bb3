#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quench/front1d.hpp"
#include "quench/grid.hpp"
#include "quench/monotone.hpp"
#include "quench/operators.hpp"
#include "quench/periodic_orbits.hpp"

namespace quench {

inline constexpr double kDefaultStripH = 0.05;
inline constexpr Interval kDefaultStripWindow{-15.0, 15.0};

enum class StripKind { periodic, half_plane };

/**
 * A truncated two-dimensional problem.
 *
 * periodic:   (-M, L) x (0, kappa), data theta(x) * orbit(y).
 * half_plane: (-M, L) x (-M, 0),    data theta(x) * theta_(-M,0)(y).
 *
 * `theta` is the discrete 1D front on gx and `profile` the discrete y-profile
 * on gy used in the data (the discrete orbit, or the 1D front on (-M, 0)).
 * For the periodic kind both solve the matching 1D schemes exactly, so
 * min(theta, profile) is a discrete supersolution of the 2D scheme. The
 * half-plane profile carries the convection term in y, so there only
 * theta(x) itself is a supersolution.
 */
struct StripProblem {
  StripKind kind;
  double c;
  HalfPeriod kappa;
  double M;
  double L;
  Grid2D grid;
  FaceData2D boundary;
  Field1D theta;
  Field1D profile;
};

// Odd, 7-smooth cell count with spacing <= h on (0, kappa).
Grid1D orbit_grid(double kappa, double h);

// Positive solution of -D2 u + 5u = 6u - u^3 on gy with zero faces: the
// discrete counterpart of the periodic orbit, by monotone iteration from 1.
Field1D discrete_orbit(const Grid1D& gy, double tol = 1e-12);

StripProblem make_strip_problem(double c, HalfPeriod kappa, double M, double L,
                                double h = kDefaultStripH, double tol = kDefaultTol);
StripProblem make_hinfty_problem(double c, double M, double L, double h = kDefaultStripH,
                                 double tol = kDefaultTol);

struct StripSolution {
  Field2D field;
  IterationReport report;
};

// Monotone iteration from `start` (default: 1 in the interior), which must be
// a discrete supersolution of the problem.
StripSolution solve_truncated_strip(const StripProblem& p, double tol = kDefaultTol,
                                    std::optional<std::vector<double>> start = std::nullopt,
                                    std::size_t max_iterations = IterationOptions{}.max_iterations);

// sup |A u - B(g) - F(u)| of a field for the problem's scheme.
double strip_residual(const StripProblem& p, const Field2D& u);

// min(theta(x), profile(y)) on the problem grid (a supersolution only for
// the periodic kind; see StripProblem).
Field2D comparison_ceiling(const StripProblem& p);

// Extension by the problem's far-field values: profile(y) to the left, 0 to
// the right, zero on the y faces (periodic) or theta(x) below (half-plane).
Evaluator2D extend_solution(const StripProblem& p, const Field2D& u);

struct StripContinuation {
  Field2D field;
  StripProblem problem;  // the final truncation
  double M_final;
  double L_final;
  std::size_t solves;
  double last_change;
  Verdict verdict;
  double wake_amplitude;     // max over y at the left window edge
  double far_field_error;    // sup |u - profile| on the slice x = -M_final / 2
  double right_max;          // max over y on the last column
};

// M doubling from 25 (at L = 25), then L doubling, each until the field on
// window x (0, kappa) moves by less than domain_tol. M doublings are warm
// started from the previous solution extended by the discrete orbit; an
// empty wake is reported through the verdict.
StripContinuation continue_strip(double c, HalfPeriod kappa, double tol = kDefaultTol,
                                 Interval window = kDefaultStripWindow,
                                 double domain_tol = kDefaultDomainTol,
                                 double h = kDefaultStripH,
                                 std::size_t max_iterations = IterationOptions{}.max_iterations);

struct HInftySolution {
  Field2D field;  // lower half y < 0
  StripProblem problem;
  double M_final;
  double L_final;
  std::size_t solves;
  double last_change;
  Evaluator2D lower_extension;

  // Full-plane pattern through u(x, -y) = -u(x, y).
  double operator()(double x, double y) const;
};

HInftySolution solve_hinfty(double c, double tol = kDefaultTol,
                            Interval window = kDefaultStripWindow,
                            double domain_tol = kDefaultDomainTol, double h = kDefaultStripH);

struct SubsolutionSpec {
  double c;
  double d;
  double alpha;
  HalfPeriod kappa;
};

void check_existence_spec(const SubsolutionSpec& s);
void check_nonexistence_spec(const SubsolutionSpec& s);

// V = e^{(d-c)x/2} w_d(x) alpha sin(pi y / kappa) with w_d(0) = 0 on x <= 0.
// Cells with x > 0 are set to 0 (max(V, 0) is still a subsolution there).
Field2D build_subsolution(const SubsolutionSpec& s, const Grid2D& grid);

// V = w_c(x) + e^{(d-c)x/2} w_d(x + shift) alpha sin(pi y / kappa) on x <= 0,
// where shift >= 0 is the smallest multiple of h for which
// d^2/4 - P + w_d^2 - 3 w_c^2 <= 0 at every column.
struct NonexistenceSupersolution {
  Field2D field;
  double shift;
};
NonexistenceSupersolution build_nonexistence_supersolution_with_shift(const SubsolutionSpec& s,
                                                                      const Grid2D& grid);
Field2D build_nonexistence_supersolution(const SubsolutionSpec& s, const Grid2D& grid);

}  // namespace quench
