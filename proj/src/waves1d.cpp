#include "quench/waves1d.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "quench/errors.hpp"

namespace quench {

namespace {

constexpr double kShootEps = 1e-8;
constexpr double kMaxShootLength = 2000.0;

struct State {
  double u;
  double v;
};

State wave_rhs(double d, State s) { return {s.v, -d * s.v - s.u + s.u * s.u * s.u}; }

State rk4_step(double d, State s, double dt) {
  const State k1 = wave_rhs(d, s);
  const State k2 = wave_rhs(d, {s.u + 0.5 * dt * k1.u, s.v + 0.5 * dt * k1.v});
  const State k3 = wave_rhs(d, {s.u + 0.5 * dt * k2.u, s.v + 0.5 * dt * k2.v});
  const State k4 = wave_rhs(d, {s.u + dt * k3.u, s.v + dt * k3.v});
  return {s.u + dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

double left_rate(double d) { return -d / 2.0 + std::sqrt(d * d / 4.0 + 2.0); }

// Shooting time s* (measured from the state 1 - eps) at which the trajectory
// first reaches `anchor` from above.
double anchor_time(double d, double anchor, double dt) {
  const double m = left_rate(d);
  State s{1.0 - kShootEps, -kShootEps * m};
  double t = 0.0;
  while (t < kMaxShootLength) {
    const State next = rk4_step(d, s, dt);
    if (next.u <= anchor) {
      double lo = 0.0;
      double hi = dt;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rk4_step(d, s, mid).u > anchor) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return t + 0.5 * (lo + hi);
    }
    s = next;
    t += dt;
  }
  throw DomainTooShortError("bistable_wave: shooting never reached the anchor value");
}

}  // namespace

WaveProfile bistable_wave(double d, const Grid1D& grid) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("bistable_wave: need d >= 0");
  const WaveKind kind = d < 2.0 ? WaveKind::oscillatory_tail : WaveKind::monotone;
  const double anchor = kind == WaveKind::monotone ? 0.5 : 0.0;
  const double h = grid.h();
  const double dt_max = h / 4.0;
  const double shift = anchor_time(d, anchor, dt_max);
  const double m = left_rate(d);

  const std::size_t n = grid.n_cells();
  std::vector<double> u(n);
  std::vector<double> du(n);
  State s{1.0 - kShootEps, -kShootEps * m};
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = grid.center(i) + shift;
    if (target <= 0.0) {
      // Still on the linear part of the unstable manifold of u = 1.
      const double e = kShootEps * std::exp(m * target);
      u[i] = 1.0 - e;
      du[i] = -m * e;
      continue;
    }
    const double span = target - t;
    const int steps = std::max(1, static_cast<int>(std::ceil(span / dt_max - 1e-9)));
    const double dt = span / steps;
    for (int k = 0; k < steps; ++k) s = rk4_step(d, s, dt);
    t = target;
    if (!(std::abs(s.u) < 1.5)) {
      throw AccuracyError("bistable_wave: shooting diverged at x = " +
                          std::to_string(grid.center(i)) + "; shorten the grid");
    }
    u[i] = s.u;
    du[i] = s.v;
  }
  if (1.0 - u.front() > 1e-6) {
    throw DomainTooShortError("bistable_wave: grid does not reach the u = 1 tail (1 - w(x_min) = " +
                              std::to_string(1.0 - u.front()) + ")");
  }
  return {d, Field1D(grid, std::move(u)), Field1D(grid, std::move(du)), kind};
}

double WaveProfile::value_at(double x) const {
  const Grid1D& g = profile.grid();
  const std::size_t n = g.n_cells();
  const double h = g.h();
  double s = (x - g.center(0)) / h;
  if (s <= 0.0) s = 0.0;
  if (s >= static_cast<double>(n - 1)) s = static_cast<double>(n - 1) - 1e-12;
  const auto i = static_cast<std::size_t>(std::floor(s));
  const double t = s - static_cast<double>(i);
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * profile[i] + h10 * h * slope[i] + h01 * profile[i + 1] + h11 * h * slope[i + 1];
}

double csch_supersolution_at(double x) {
  static const double x0 = std::asinh(std::numbers::sqrt2);
  if (!(x > -x0)) throw DomainError("csch_supersolution: singular at x <= -x0");
  return std::numbers::sqrt2 / std::sinh(x + x0);
}

Field1D csch_supersolution(const Grid1D& grid) {
  csch_supersolution_at(grid.x_min() + 1e-300);  // domain check on the left face
  return Field1D::sample(grid, csch_supersolution_at);
}

DecayRates decay_rates(double c) {
  return {c / 2.0 + std::sqrt(c * c / 4.0 + 1.0), -c / 2.0 + std::sqrt(c * c / 4.0 + 2.0)};
}

}  // namespace quench
