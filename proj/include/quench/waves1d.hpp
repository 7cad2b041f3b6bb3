#pragma once

#include "quench/grid.hpp"

namespace quench {

enum class WaveKind { oscillatory_tail, monotone };

// Solution of w'' + d w' + w - w^3 = 0 leaving u = 1 at x -> -infinity.
// For d < 2 it is translated so that its first zero sits at x = 0; for
// d >= 2 so that w(0) = 1/2.
struct WaveProfile {
  double d;
  Field1D profile;
  Field1D slope;
  WaveKind kind;

  // Cubic Hermite interpolation of (profile, slope) inside the grid.
  double value_at(double x) const;
};

WaveProfile bistable_wave(double d, const Grid1D& grid);

// sqrt(2) csch(x + x0) with x0 = asinh(sqrt 2): solves w'' = w + w^3 exactly,
// equals 1 at x = 0 and decays like 2 sqrt(2) e^{-x}.
Field1D csch_supersolution(const Grid1D& grid);
double csch_supersolution_at(double x);

struct DecayRates {
  double lambda_right;  // theta ~ e^{-lambda x} as x -> +infinity
  double m_left;        // 1 - theta ~ e^{m x} as x -> -infinity
};

DecayRates decay_rates(double c);

}  // namespace quench
