#pragma once

#include <cstddef>
#include <limits>

#include "quench/grid.hpp"

namespace quench {

// Half-period of the far-field orbit. The single-interface limit is the
// distinguished value HalfPeriod::infinite().
class HalfPeriod {
 public:
  constexpr explicit HalfPeriod(double v) : value_(v) {}
  static constexpr HalfPeriod infinite() {
    return HalfPeriod(std::numeric_limits<double>::infinity());
  }
  constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr double value() const { return value_; }

 private:
  double value_;
};

/// Odd periodic solution of u'' + u - u^3 = 0 with u(0) = 0, u'(0) > 0,
/// sampled on [0, kappa]. For kappa = infinity the profile is tanh(y/sqrt 2)
/// on [0, extent].
struct PeriodicOrbit {
  HalfPeriod kappa;
  double amplitude;
  double hamiltonian_level;  // M^2 (2 - M^2) / 2
  Field1D profile;
  Field1D slope;             // u'(y) at the same centres
  double hamiltonian_drift;  // max relative deviation of H along the samples
};

// K(k) = int_0^1 dv / sqrt((1 - v^2)(1 - k^2 v^2)) by the arithmetic-geometric
// mean. Domain 0 <= k < 1.
double complete_elliptic_K(double k);

// Same integral parametrised by the complementary modulus k' = sqrt(1 - k^2);
// accurate when k is within rounding of 1.
double complete_elliptic_K_complement(double k_prime);

// kappa(M) = (2 sqrt 2 gamma / M) K(gamma), gamma^2 = M^2 / (2 - M^2).
double half_period_of_amplitude(double amplitude);

// Inverse of half_period_of_amplitude by bisection on (0, 1). Throws
// DomainError for kappa <= pi and AccuracyError when kappa is so large that
// no double M reproduces it within 1e-6.
double amplitude_of_half_period(double kappa);

// H(u, u_y) = u_y^2 + u^2 - u^4 / 2, conserved along the orbit.
double hamiltonian(double u, double uy);

// Shoots u'' = -u + u^3 from u(0) = 0, u'(0) = sqrt(H) with classical RK4
// (40 steps per cell) up to the turning point kappa/2 and mirrors. The cell
// count is rounded up to an odd number so that kappa/2 is a sample point.
PeriodicOrbit sample_orbit(HalfPeriod kappa, std::size_t n_cells,
                           double infinite_extent = 20.0);

}  // namespace quench
