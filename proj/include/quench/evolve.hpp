#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "quench/grid.hpp"
#include "quench/operators.hpp"

namespace quench {

enum class Frame { comoving, lab };

using AnyField = std::variant<Field1D, Field2D>;
using AnyFaces = std::variant<FaceData1D, FaceData2D>;

/**
 * Parabolic problem u_t = Delta u + c u_x + mu(x) u - u^3 (comoving) or
 * u_t = Delta u + mu(xi - c t) u - u^3 (lab) on the grid of `initial`.
 *
 * In the lab frame the quench sits at xi = front_start + c t, rounded to the
 * nearest cell interface each step.
 */
struct EvolveConfig {
  Frame frame = Frame::comoving;
  double c = 0.0;
  double dt = 0.0;  // <= 0 selects 0.1 h^2
  double t_end = 1.0;
  AnyField initial = Field1D::constant(Grid1D(0.0, 1.0, 2), 0.0);
  std::optional<AnyFaces> faces;  // zero data when absent
  double front_start = 0.0;
  std::size_t checkpoint_every = 100;
};

double default_time_step(const AnyField& f);

/**
 * Semi-implicit stepping: (1/dt + A) u_{n+1} = u_n / dt + (5 + mu) u_n - u_n^3
 * + B(g), with A = -Delta - c D_x + 5 the elliptic operator. Order preserving
 * for values in [-1.2, 1.2] at any dt.
 */
class TimeStepper {
 public:
  explicit TimeStepper(const EvolveConfig& cfg);
  ~TimeStepper();
  TimeStepper(TimeStepper&&) noexcept;
  TimeStepper& operator=(TimeStepper&&) noexcept;

  void step();
  // sup |Delta u + c u_x + mu u - u^3| for the current mu, i.e. |u_t|.
  double residual() const;

  const std::vector<double>& values() const;
  AnyField field() const;
  double time() const;
  double dt() const;
  std::size_t steps() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct EvolveResult {
  AnyField field;
  std::vector<double> residual_history;  // one per checkpoint
  std::vector<double> checkpoint_times;
  std::size_t steps;
};

using CheckpointHook = std::function<void(std::size_t step, double t, const TimeStepper&)>;

// Runs ceil(t_end / dt) steps, with dt reduced so they end exactly at t_end.
// Throws InstabilityError if |u| > 2.
EvolveResult evolve(const EvolveConfig& cfg, const CheckpointHook& hook = {});

// Evolves both fields under cfg (initial replaced) for `steps` steps and
// reports whether lower <= upper + 1e-8 at every checkpoint and at the end.
bool comparison_preserved(const AnyField& lower, const AnyField& upper, EvolveConfig cfg,
                          std::size_t steps);

}  // namespace quench
