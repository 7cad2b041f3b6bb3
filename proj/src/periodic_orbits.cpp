#include "quench/periodic_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "quench/errors.hpp"

namespace quench {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (std::abs(an - bn) <= 1e-16 * an) return an;
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

struct State {
  double u;
  double v;
};

State orbit_rhs(State s) { return {s.v, -s.u + s.u * s.u * s.u}; }

State rk4_step(State s, double dt) {
  const State k1 = orbit_rhs(s);
  const State k2 = orbit_rhs({s.u + 0.5 * dt * k1.u, s.v + 0.5 * dt * k1.v});
  const State k3 = orbit_rhs({s.u + 0.5 * dt * k2.u, s.v + 0.5 * dt * k2.v});
  const State k4 = orbit_rhs({s.u + dt * k3.u, s.v + dt * k3.v});
  return {s.u + dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

State advance(State s, double length, int steps) {
  const double dt = length / steps;
  for (int k = 0; k < steps; ++k) s = rk4_step(s, dt);
  return s;
}

}  // namespace

double complete_elliptic_K_complement(double k_prime) {
  if (!(k_prime > 0.0 && k_prime <= 1.0)) {
    throw DomainError("complete_elliptic_K: complementary modulus must be in (0, 1]");
  }
  return std::numbers::pi / (2.0 * agm(1.0, k_prime));
}

double complete_elliptic_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) throw DomainError("complete_elliptic_K: need 0 <= k < 1");
  return complete_elliptic_K_complement(std::sqrt((1.0 - k) * (1.0 + k)));
}

double half_period_of_amplitude(double amplitude) {
  const double m = amplitude;
  if (!(m > 0.0 && m < 1.0)) throw DomainError("half_period_of_amplitude: need 0 < M < 1");
  const double two_minus = 2.0 - m * m;
  // 1 - gamma^2 = 2 (1 - M^2) / (2 - M^2), formed without cancellation.
  const double k_prime = std::sqrt(2.0 * (1.0 - m) * (1.0 + m) / two_minus);
  return 2.0 * kSqrt2 / std::sqrt(two_minus) * complete_elliptic_K_complement(k_prime);
}

double amplitude_of_half_period(double kappa) {
  if (!(kappa > std::numbers::pi)) {
    throw DomainError("amplitude_of_half_period: need kappa > pi");
  }
  if (!std::isfinite(kappa)) throw DomainError("amplitude_of_half_period: kappa must be finite");
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (half_period_of_amplitude(mid) < kappa) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double best = lo > 0.0 ? lo : hi;
  if (hi < 1.0 &&
      std::abs(half_period_of_amplitude(hi) - kappa) < std::abs(half_period_of_amplitude(best) - kappa)) {
    best = hi;
  }
  const double miss = std::abs(half_period_of_amplitude(best) - kappa);
  if (miss > 1e-6) {
    throw AccuracyError("amplitude_of_half_period: kappa = " + std::to_string(kappa) +
                        " is beyond double resolution of the period map");
  }
  return best;
}

double hamiltonian(double u, double uy) { return uy * uy + u * u - 0.5 * u * u * u * u; }

PeriodicOrbit sample_orbit(HalfPeriod kappa, std::size_t n_cells, double infinite_extent) {
  if (n_cells < 3) n_cells = 3;
  if (n_cells % 2 == 0) ++n_cells;
  if (kappa.is_infinite()) {
    if (!(infinite_extent > 0.0)) throw DomainError("sample_orbit: extent must be positive");
    Grid1D g(0.0, infinite_extent, n_cells);
    auto u = Field1D::sample(g, [](double y) { return std::tanh(y / kSqrt2); });
    auto du = Field1D::sample(g, [](double y) {
      const double t = std::tanh(y / kSqrt2);
      return (1.0 - t * t) / kSqrt2;
    });
    return {kappa, 1.0, 0.5, std::move(u), std::move(du), 0.0};
  }
  const double kap = kappa.value();
  if (!(kap > std::numbers::pi)) throw DomainError("sample_orbit: need kappa > pi");
  const double amp = amplitude_of_half_period(kap);
  const double level = amp * amp * (2.0 - amp * amp) / 2.0;

  Grid1D grid(0.0, kap, n_cells);
  const double h = grid.h();
  // RK4 substeps: at least 40 per cell and no longer than 0.005.
  const int steps_per_cell = 2 * std::max(20, static_cast<int>(std::ceil(h / 0.01)));
  std::vector<double> u(n_cells);
  std::vector<double> du(n_cells);
  const std::size_t mid = n_cells / 2;
  State s{0.0, std::sqrt(level)};
  double drift = 0.0;
  s = advance(s, 0.5 * h, steps_per_cell / 2);
  for (std::size_t j = 0; j <= mid; ++j) {
    if (j > 0) s = advance(s, h, steps_per_cell);
    u[j] = s.u;
    du[j] = s.v;
    drift = std::max(drift, std::abs(hamiltonian(s.u, s.v) - level) / level);
  }
  for (std::size_t j = mid + 1; j < n_cells; ++j) {
    u[j] = u[n_cells - 1 - j];
    du[j] = -du[n_cells - 1 - j];
  }
  if (drift > 1e-8) {
    throw AccuracyError("sample_orbit: Hamiltonian drift " + std::to_string(drift) +
                        " exceeds 1e-8; refine the grid");
  }
  return {kappa, amp, level, Field1D(grid, std::move(u)), Field1D(grid, std::move(du)), drift};
}

}  // namespace quench
