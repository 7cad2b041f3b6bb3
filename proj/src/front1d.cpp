#include "quench/front1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quench/errors.hpp"
#include "quench/operators.hpp"

namespace quench {

namespace {

void check_speed_and_spacing(double c, double h) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("front: need finite c >= 0");
  if (!(h > 0.0 && h <= 1.0)) throw DomainError("front: need 0 < h <= 1");
  if (!(c * h / 2.0 < 1.0)) throw DomainError("front: need c*h/2 < 1");
}

std::vector<double> mu_samples(const Grid1D& g) {
  std::vector<double> mu(g.n_cells());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = mu_at(g.center(i));
  return mu;
}

double field_residual(const ConvectionDiffusion1D& op, std::span<const double> mu,
                      std::span<const double> u, FaceData1D faces) {
  std::vector<double> au(u.size());
  op.apply(u, faces, au);
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) r = std::max(r, std::abs(au[i] - reaction(mu[i], u[i])));
  return r;
}

}  // namespace

FrontSolution solve_front_from(double c, const Grid1D& grid, std::vector<double> start,
                               FaceData1D faces, const IterationOptions& opts) {
  return solve_monotone_1d(c, grid, mu_samples(grid), std::move(start), faces, opts);
}

FrontSolution solve_monotone_1d(double c, const Grid1D& grid, std::span<const double> mu,
                                std::vector<double> start, FaceData1D faces,
                                const IterationOptions& opts) {
  check_speed_and_spacing(c, grid.h());
  if (start.size() != grid.n_cells() || mu.size() != grid.n_cells()) {
    throw DimensionError("solve_monotone_1d: size mismatch");
  }
  const ConvectionDiffusion1D op(grid, c, kMonotoneShift);
  auto rep = detail::monotone_iterate(
      start, mu, [&](std::span<double> rhs) { op.solve(rhs, faces); },
      [&](std::span<const double> u) { return field_residual(op, mu, u, faces); }, opts);
  return {Field1D(grid, std::move(start)), rep};
}

FrontSolution solve_truncated_front(double c, double M, double L, double h, double tol,
                                    std::size_t max_iterations) {
  if (!(M >= 0.0 && L >= 0.0 && M + L > 0.0) || !std::isfinite(M) || !std::isfinite(L)) {
    throw DomainError("solve_truncated_front: need M, L >= 0 with M + L > 0");
  }
  check_speed_and_spacing(c, h);
  const Grid1D grid = Grid1D::aligned(-M, L, h);
  IterationOptions opts;
  opts.tol = tol;
  opts.max_iterations = max_iterations;
  return solve_front_from(c, grid, std::vector<double>(grid.n_cells(), 1.0), {1.0, 0.0}, opts);
}

double front_residual(const Field1D& u, double c, double left, double right) {
  const ConvectionDiffusion1D op(u.grid(), c, kMonotoneShift);
  return field_residual(op, mu_samples(u.grid()), u.values(), {left, right});
}

double window_change(const Field1D& a, const Field1D& b, Interval window, double left,
                     double right) {
  const auto ea = extend_front(a, left, right);
  const auto eb = extend_front(b, left, right);
  const Grid1D& fine = a.grid().h() <= b.grid().h() ? a.grid() : b.grid();
  double change = 0.0;
  // Probe both the centres of the finer grid and the window ends.
  const double first = window.lo;
  double x = fine.x_min() + 0.5 * fine.h();
  if (x < first) x += std::ceil((first - x) / fine.h()) * fine.h();
  for (; x <= window.hi; x += fine.h()) change = std::max(change, std::abs(ea(x) - eb(x)));
  change = std::max(change, std::abs(ea(window.lo) - eb(window.lo)));
  change = std::max(change, std::abs(ea(window.hi) - eb(window.hi)));
  return change;
}

ContinuedFront continue_front(double c, double h, double tol, Interval window,
                              double domain_tol) {
  if (!(c >= 0.0 && c < 2.0)) {
    throw DomainError("continue_front: need 0 <= c < 2 (use the dichotomy check otherwise)");
  }
  if (!(domain_tol > 0.0)) throw DomainError("continue_front: domain_tol must be positive");
  double M = kScheduleStart;
  double L = kScheduleStart;
  std::size_t solves = 1;
  FrontSolution cur = solve_truncated_front(c, M, L, h, tol);
  double change = 0.0;
  for (;;) {
    if (2.0 * M > kScheduleEnd) {
      throw ConvergenceError("continue_front: M schedule exhausted at M = " + std::to_string(M));
    }
    FrontSolution next = solve_truncated_front(c, 2.0 * M, L, h, tol);
    ++solves;
    change = window_change(cur.field, next.field, window, 1.0, 0.0);
    M *= 2.0;
    cur = std::move(next);
    if (change < domain_tol) break;
  }
  for (;;) {
    if (2.0 * L > kScheduleEnd) {
      throw ConvergenceError("continue_front: L schedule exhausted at L = " + std::to_string(L));
    }
    FrontSolution next = solve_truncated_front(c, M, 2.0 * L, h, tol);
    ++solves;
    change = window_change(cur.field, next.field, window, 1.0, 0.0);
    L *= 2.0;
    cur = std::move(next);
    if (change < domain_tol) break;
  }
  return {std::move(cur.field), M, L, solves, change};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::nontrivial:
      return "nontrivial";
    case Verdict::trivial:
      return "trivial";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify_amplitude(double wake, double far_field_amplitude) {
  if (wake >= 0.5 * far_field_amplitude) return Verdict::nontrivial;
  if (wake <= 1e-3) return Verdict::trivial;
  return Verdict::inconclusive;
}

DichotomyVerdict verify_dichotomy(double c, Interval probe, double h, double tol,
                                  double domain_tol) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("verify_dichotomy: need c >= 0");
  auto wake_of = [&](const Field1D& f) {
    double w = 0.0;
    for (std::size_t i : f.grid().indices_in(probe)) w = std::max(w, f[i]);
    return w;
  };
  if (std::abs(c - 2.0) < kCriticalSpeedBand) {
    // Convergence degenerates near c = 2; one truncated solve is reported
    // for information and the last iterate is used if it stalls.
    const double M = kScheduleStart;
    const Grid1D grid = Grid1D::aligned(-M, kDichotomyL, h);
    IterationOptions opts;
    opts.tol = tol;
    std::vector<double> u(grid.n_cells(), 1.0);
    const ConvectionDiffusion1D op(grid, c, kMonotoneShift);
    const auto mu = mu_samples(grid);
    try {
      detail::monotone_iterate(
          u, mu, [&](std::span<double> rhs) { op.solve(rhs, {1.0, 0.0}); },
          [&](std::span<const double> v) { return field_residual(op, mu, v, {1.0, 0.0}); },
          opts);
    } catch (const ConvergenceError&) {
    }
    return {c, Verdict::inconclusive, wake_of(Field1D(grid, std::move(u))), probe, M,
            kDichotomyL};
  }
  double M = kScheduleStart;
  FrontSolution cur = solve_truncated_front(c, M, kDichotomyL, h, tol);
  for (;;) {
    if (2.0 * M > kScheduleEnd) {
      throw ConvergenceError("verify_dichotomy: M schedule exhausted at M = " + std::to_string(M));
    }
    FrontSolution next = solve_truncated_front(c, 2.0 * M, kDichotomyL, h, tol);
    const double change = window_change(cur.field, next.field, probe, 1.0, 0.0);
    M *= 2.0;
    cur = std::move(next);
    if (change < domain_tol) break;
  }
  const double wake = wake_of(cur.field);
  return {c, classify_amplitude(wake, 1.0), wake, probe, M, kDichotomyL};
}

}  // namespace quench
