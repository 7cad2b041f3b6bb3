#include "quench/strip2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quench/classify.hpp"
#include "quench/errors.hpp"
#include "quench/waves1d.hpp"

namespace quench {

namespace {

std::vector<double> mu_cells(const Grid2D& g) {
  std::vector<double> mu(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) mu[g.index(i, j)] = mu_at(g.gx().center(i));
  }
  return mu;
}

double residual_with(const SeparableOperator2D& op, std::span<const double> mu,
                     std::span<const double> u, const FaceData2D& faces) {
  std::vector<double> au(u.size());
  op.apply(u, faces, au);
  double r = 0.0;
  for (std::size_t p = 0; p < u.size(); ++p) {
    r = std::max(r, std::abs(au[p] - reaction(mu[p], u[p])));
  }
  return r;
}

void check_strip_args(double c, double M, double L, double h) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("strip: need finite c >= 0");
  if (!(M > 0.0 && L > 0.0) || !std::isfinite(M) || !std::isfinite(L)) {
    throw DomainError("strip: need M, L > 0");
  }
  if (!(h > 0.0 && h <= 1.0)) throw DomainError("strip: need 0 < h <= 1");
  if (!(c * h / 2.0 < 1.0)) throw DomainError("strip: need c*h/2 < 1");
}

// Offset (in cells) of grid b's first centre relative to grid a's, when
// the two share spacing and nodes.
long node_offset(const Grid1D& a, const Grid1D& b) {
  if (!a.nodes_aligned_with(b)) throw DimensionError("strip: grids do not share nodes");
  return std::lround((b.x_min() - a.x_min()) / a.h());
}

// Sup of |a - b| over the cells of b's grid inside the window, both grids
// sharing nodes and containing the window.
double window_change_2d(const Field2D& a, const Field2D& b, Interval wx, Interval wy) {
  const Grid2D& ga = a.grid();
  const Grid2D& gb = b.grid();
  const long ox = node_offset(ga.gx(), gb.gx());
  const long oy = node_offset(ga.gy(), gb.gy());
  double change = 0.0;
  for (std::size_t j : gb.gy().indices_in(wy)) {
    const long ja = static_cast<long>(j) + oy;
    if (ja < 0 || ja >= static_cast<long>(ga.ny())) throw DimensionError("window outside grid");
    for (std::size_t i : gb.gx().indices_in(wx)) {
      const long ia = static_cast<long>(i) + ox;
      if (ia < 0 || ia >= static_cast<long>(ga.nx())) throw DimensionError("window outside grid");
      change = std::max(change, std::abs(b.at(i, j) - a.at(static_cast<std::size_t>(ia),
                                                           static_cast<std::size_t>(ja))));
    }
  }
  return change;
}

Interval y_window(const StripProblem& p, Interval window) {
  if (p.kind == StripKind::periodic) return {p.grid.gy().x_min(), p.grid.gy().x_max()};
  return {window.lo, 0.0};
}

std::size_t nearest_column(const Grid1D& gx, double x) {
  const double s = (x - gx.x_min()) / gx.h() - 0.5;
  const long i = std::lround(s);
  return static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(gx.n_cells()) - 1));
}

}  // namespace

Grid1D orbit_grid(double kappa, double h) {
  if (!(kappa > std::numbers::pi) || !std::isfinite(kappa)) {
    throw DomainError("orbit_grid: need finite kappa > pi");
  }
  auto n = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(kappa / h - 1e-9)), 3);
  // Odd, and 7-smooth so the sine transforms stay fast.
  auto smooth = [](std::size_t m) {
    for (std::size_t p : {3, 5, 7}) {
      while (m % p == 0) m /= p;
    }
    return m == 1;
  };
  if (n % 2 == 0) ++n;
  while (!smooth(n)) n += 2;
  return Grid1D(0.0, kappa, n);
}

Field1D discrete_orbit(const Grid1D& gy, double tol) {
  IterationOptions opts;
  opts.tol = tol;
  const std::vector<double> mu(gy.n_cells(), 1.0);
  FrontSolution s = solve_monotone_1d(0.0, gy, mu, std::vector<double>(gy.n_cells(), 1.0),
                                      {0.0, 0.0}, opts);
  if (s.field.max() < 1e-6) {
    throw DomainError("discrete_orbit: no positive orbit on this grid (kappa too close to pi)");
  }
  return std::move(s.field);
}

StripProblem make_strip_problem(double c, HalfPeriod kappa, double M, double L, double h,
                                double tol) {
  check_strip_args(c, M, L, h);
  if (kappa.is_infinite()) {
    throw DomainError("strip: kappa = infinity is the half-plane problem (use hinfty)");
  }
  Grid1D gx = Grid1D::aligned(-M, L, h);
  Grid1D gy = orbit_grid(kappa.value(), h);
  Field1D orbit = discrete_orbit(gy, std::min(tol, 1e-12));
  Field1D theta = solve_truncated_front(c, M, L, h, tol).field;
  Grid2D grid(gx, gy);
  FaceData2D faces = FaceData2D::zeros(grid);
  const auto ov = orbit.values();
  faces.left.assign(ov.begin(), ov.end());
  return {StripKind::periodic, c, kappa, M, L, std::move(grid), std::move(faces),
          std::move(theta), std::move(orbit)};
}

StripProblem make_hinfty_problem(double c, double M, double L, double h, double tol) {
  check_strip_args(c, M, L, h);
  Grid1D gx = Grid1D::aligned(-M, L, h);
  Grid1D gy = Grid1D::aligned(-M, 0.0, h);
  Field1D theta = solve_truncated_front(c, M, L, h, tol).field;
  Field1D theta_y = solve_truncated_front(c, M, 0.0, h, tol).field;
  if (!(theta_y.grid() == gy)) throw DimensionError("hinfty: y-grid mismatch");
  Grid2D grid(gx, gy);
  FaceData2D faces = FaceData2D::zeros(grid);
  const auto ty = theta_y.values();
  faces.left.assign(ty.begin(), ty.end());
  const auto tx = theta.values();
  faces.bottom.assign(tx.begin(), tx.end());
  return {StripKind::half_plane, c, HalfPeriod::infinite(), M, L, std::move(grid),
          std::move(faces), std::move(theta), std::move(theta_y)};
}

StripSolution solve_truncated_strip(const StripProblem& p, double tol,
                                    std::optional<std::vector<double>> start,
                                    std::size_t max_iterations) {
  if (!(tol >= 1e-12)) throw ParameterError("solve_truncated_strip: tol must be >= 1e-12");
  p.boundary.check(p.grid);
  std::vector<double> u = start ? std::move(*start) : std::vector<double>(p.grid.size(), 1.0);
  if (u.size() != p.grid.size()) throw DimensionError("solve_truncated_strip: start size");
  SeparableOperator2D op(p.grid, p.c, kMonotoneShift);
  const auto mu = mu_cells(p.grid);
  IterationOptions opts;
  opts.tol = tol;
  opts.max_iterations = max_iterations;
  auto rep = detail::monotone_iterate(
      u, mu, [&](std::span<double> rhs) { op.solve(rhs, p.boundary); },
      [&](std::span<const double> v) { return residual_with(op, mu, v, p.boundary); }, opts);
  return {Field2D(p.grid, std::move(u)), rep};
}

double strip_residual(const StripProblem& p, const Field2D& u) {
  SeparableOperator2D op(p.grid, p.c, kMonotoneShift);
  return residual_with(op, mu_cells(p.grid), u.values(), p.boundary);
}

Field2D comparison_ceiling(const StripProblem& p) {
  const Grid2D& g = p.grid;
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      v[g.index(i, j)] = std::min(p.theta[i], p.profile[j]);
    }
  }
  return Field2D(g, std::move(v));
}

Evaluator2D extend_solution(const StripProblem& p, const Field2D& u) {
  if (p.kind == StripKind::periodic) return extend_strip(u, p.profile, 0.0);
  const Evaluator2D inner = extend_strip(u, p.profile, 0.0);
  const Evaluator1D theta = extend_front(p.theta, 1.0, 0.0);
  const Grid1D gy = p.grid.gy();
  return [inner, theta, gy](double x, double y) {
    if (y >= gy.x_max()) return 0.0;
    if (y <= gy.x_min()) return theta(x);
    const double y0 = gy.center(0);
    if (y >= y0) return inner(x, y);
    const double t = (y - gy.x_min()) / (y0 - gy.x_min());
    return (1.0 - t) * theta(x) + t * inner(x, y0);
  };
}

namespace {

std::vector<double> to_vector(const Field2D& f) {
  const auto v = f.values();
  return {v.begin(), v.end()};
}

// The previous solution on a grid extended to the left, prolonged by the
// far-field profile. For a periodic problem this is an exact discrete
// supersolution of the larger problem.
std::vector<double> extend_left(const Field2D& prev, const Grid2D& next, const Field1D& profile) {
  const Grid2D& g = prev.grid();
  if (!(g.gy() == next.gy())) throw DimensionError("extend_left: y-grids differ");
  const long off = node_offset(next.gx(), g.gx());
  std::vector<double> v(next.size());
  for (std::size_t j = 0; j < next.ny(); ++j) {
    for (std::size_t i = 0; i < next.nx(); ++i) {
      const long ia = static_cast<long>(i) - off;
      v[next.index(i, j)] = ia < 0 ? profile[j] : prev.at(static_cast<std::size_t>(ia), j);
    }
  }
  return v;
}

std::vector<double> theta_broadcast(const StripProblem& p) {
  std::vector<double> v(p.grid.size());
  for (std::size_t j = 0; j < p.grid.ny(); ++j) {
    for (std::size_t i = 0; i < p.grid.nx(); ++i) v[p.grid.index(i, j)] = p.theta[i];
  }
  return v;
}

}  // namespace

StripContinuation continue_strip(double c, HalfPeriod kappa, double tol, Interval window,
                                 double domain_tol, double h, std::size_t max_iterations) {
  if (kappa.is_infinite()) {
    throw DomainError("continue_strip: kappa = infinity is handled by hinfty / dichotomy");
  }
  if (!(domain_tol > 0.0)) throw DomainError("continue_strip: domain_tol must be positive");
  double M = kScheduleStart;
  double L = kScheduleStart;
  if (!(window.lo > -M && window.hi < L && window.lo < window.hi)) {
    throw DomainError("continue_strip: window must lie inside (-25, 25)");
  }
  StripProblem prob = make_strip_problem(c, kappa, M, L, h, tol);
  StripSolution cur =
      solve_truncated_strip(prob, tol, to_vector(comparison_ceiling(prob)), max_iterations);
  const Interval wy = y_window(prob, window);
  std::size_t solves = 1;
  double change = 0.0;
  for (;;) {
    if (2.0 * M > kScheduleEnd) {
      throw ConvergenceError("continue_strip: M schedule exhausted at M = " + std::to_string(M));
    }
    StripProblem next_p = make_strip_problem(c, kappa, 2.0 * M, L, h, tol);
    StripSolution next =
        solve_truncated_strip(next_p, tol, extend_left(cur.field, next_p.grid, prob.profile),
                              max_iterations);
    change = window_change_2d(cur.field, next.field, window, wy);
    ++solves;
    M *= 2.0;
    prob = std::move(next_p);
    cur = std::move(next);
    if (change < domain_tol) break;
  }
  for (;;) {
    if (2.0 * L > kScheduleEnd) {
      throw ConvergenceError("continue_strip: L schedule exhausted at L = " + std::to_string(L));
    }
    StripProblem next_p = make_strip_problem(c, kappa, M, 2.0 * L, h, tol);
    StripSolution next =
        solve_truncated_strip(next_p, tol, to_vector(comparison_ceiling(next_p)), max_iterations);
    change = window_change_2d(cur.field, next.field, window, wy);
    ++solves;
    L *= 2.0;
    prob = std::move(next_p);
    cur = std::move(next);
    if (change < domain_tol) break;
  }

  const Field2D& u = cur.field;
  const Grid2D& g = u.grid();
  const Field1D wake_slice = u.slice_at_x(nearest_column(g.gx(), window.lo));
  const Field1D deep_slice = u.slice_at_x(nearest_column(g.gx(), -M / 2.0));
  double far = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    far = std::max(far, std::abs(deep_slice[j] - prob.profile[j]));
  }
  const double wake = wake_slice.max();
  const double right = u.slice_at_x(g.nx() - 1).max();
  const Verdict verdict = classify_amplitude(wake, prob.profile.max());
  Field2D field = cur.field;
  return {std::move(field), std::move(prob), M, L, solves, change, verdict, wake, far, right};
}

double HInftySolution::operator()(double x, double y) const {
  if (y > 0.0) return -lower_extension(x, -y);
  return lower_extension(x, y);
}

HInftySolution solve_hinfty(double c, double tol, Interval window, double domain_tol, double h) {
  if (!(c >= 0.0 && c < 2.0)) throw DomainError("solve_hinfty: need 0 <= c < 2");
  if (!(domain_tol > 0.0)) throw DomainError("solve_hinfty: domain_tol must be positive");
  double M = kScheduleStart;
  double L = kScheduleStart;
  if (!(window.lo > -M && window.hi < L && window.lo < window.hi)) {
    throw DomainError("solve_hinfty: window must lie inside (-25, 25)");
  }
  const Interval wy{window.lo, 0.0};
  StripProblem prob = make_hinfty_problem(c, M, L, h, tol);
  StripSolution cur = solve_truncated_strip(prob, tol, theta_broadcast(prob));
  std::size_t solves = 1;
  double change = 0.0;
  auto advance = [&](double nM, double nL) {
    StripProblem next_p = make_hinfty_problem(c, nM, nL, h, tol);
    StripSolution next = solve_truncated_strip(next_p, tol, theta_broadcast(next_p));
    change = window_change_2d(cur.field, next.field, window, wy);
    ++solves;
    prob = std::move(next_p);
    cur = std::move(next);
  };
  for (;;) {
    if (2.0 * M > kScheduleEnd) {
      throw ConvergenceError("solve_hinfty: M schedule exhausted at M = " + std::to_string(M));
    }
    advance(2.0 * M, L);
    M *= 2.0;
    if (change < domain_tol) break;
  }
  for (;;) {
    if (2.0 * L > kScheduleEnd) {
      throw ConvergenceError("solve_hinfty: L schedule exhausted at L = " + std::to_string(L));
    }
    advance(M, 2.0 * L);
    L *= 2.0;
    if (change < domain_tol) break;
  }
  Evaluator2D ext = extend_solution(prob, cur.field);
  return {std::move(cur.field), std::move(prob), M, L, solves, change, std::move(ext)};
}

void check_existence_spec(const SubsolutionSpec& s) {
  if (s.kappa.is_infinite() || !(s.kappa.value() > std::numbers::pi)) {
    throw ParameterError("subsolution: need finite kappa > pi");
  }
  const double P = critical_quantity(s.c, s.kappa);
  const double d2 = s.d * s.d / 4.0;
  if (!(s.c >= 0.0 && s.d >= 0.0 && P < d2 && d2 < 1.0)) {
    throw ParameterError("subsolution: need c^2/4 + pi^2/kappa^2 < d^2/4 < 1");
  }
  const double amp = amplitude_of_half_period(s.kappa.value());
  if (!(s.alpha >= 0.0 && s.alpha <= amp + 1e-12)) {
    throw ParameterError("subsolution: need 0 <= alpha <= M(kappa)");
  }
}

void check_nonexistence_spec(const SubsolutionSpec& s) {
  if (s.kappa.is_infinite() || !(s.kappa.value() > std::numbers::pi)) {
    throw ParameterError("supersolution: need finite kappa > pi");
  }
  const double P = critical_quantity(s.c, s.kappa);
  if (!(s.c >= 0.0 && s.d > std::max(2.0, s.c) && s.d * s.d / 4.0 - P < 0.0)) {
    throw ParameterError("supersolution: need d > max(2, c) and d^2/4 < c^2/4 + pi^2/kappa^2");
  }
  if (!(s.alpha >= 0.0)) throw ParameterError("supersolution: need alpha >= 0");
}

namespace {

void check_strip_y_grid(const Grid1D& gy, double kappa) {
  if (std::abs(gy.x_min()) > 1e-12 || std::abs(gy.x_max() - kappa) > 1e-9 * kappa) {
    throw DimensionError("sub/supersolution: y-grid must span [0, kappa]");
  }
}

}  // namespace

Field2D build_subsolution(const SubsolutionSpec& s, const Grid2D& grid) {
  check_existence_spec(s);
  const double kap = s.kappa.value();
  check_strip_y_grid(grid.gy(), kap);
  const WaveProfile w = bistable_wave(s.d, grid.gx());
  const double a = (s.d - s.c) / 2.0;
  std::vector<double> v(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double x = grid.gx().center(i);
    if (x >= 0.0) continue;
    const double fx = std::exp(a * x) * w.profile[i];
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      v[grid.index(i, j)] = fx * s.alpha * std::sin(std::numbers::pi * grid.gy().center(j) / kap);
    }
  }
  return Field2D(grid, std::move(v));
}

NonexistenceSupersolution build_nonexistence_supersolution_with_shift(const SubsolutionSpec& s,
                                                                      const Grid2D& grid) {
  check_nonexistence_spec(s);
  const double kap = s.kappa.value();
  check_strip_y_grid(grid.gy(), kap);
  const Grid1D& gx = grid.gx();
  if (gx.x_max() > 1e-12) throw DomainError("supersolution: grid must lie in x <= 0");
  const WaveProfile wc = bistable_wave(s.c, gx);
  const double h = gx.h();
  const auto extra = static_cast<std::size_t>(std::ceil(40.0 / h));
  const Grid1D ext(gx.x_min(), gx.x_max() + static_cast<double>(extra) * h, gx.n_cells() + extra);
  const WaveProfile wd = bistable_wave(s.d, ext);
  const double gap = s.d * s.d / 4.0 - critical_quantity(s.c, s.kappa);
  std::size_t k = 0;
  for (; k <= extra; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < gx.n_cells() && ok; ++i) {
      const double wdi = wd.profile[i + k];
      ok = gap + wdi * wdi - 3.0 * wc.profile[i] * wc.profile[i] <= 0.0;
    }
    if (ok) break;
  }
  if (k > extra) throw AccuracyError("supersolution: no admissible shift of w_d found");
  const double a = (s.d - s.c) / 2.0;
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double fx = std::exp(a * gx.center(i)) * wd.profile[i + k] * s.alpha;
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      v[grid.index(i, j)] =
          wc.profile[i] + fx * std::sin(std::numbers::pi * grid.gy().center(j) / kap);
    }
  }
  return {Field2D(grid, std::move(v)), static_cast<double>(k) * h};
}

Field2D build_nonexistence_supersolution(const SubsolutionSpec& s, const Grid2D& grid) {
  return build_nonexistence_supersolution_with_shift(s, grid).field;
}

}  // namespace quench
