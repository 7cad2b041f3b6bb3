#include "quench/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quench/errors.hpp"
#include "quench/monotone.hpp"

namespace quench {

namespace {

constexpr double kInitialBound = 1.2;
constexpr double kBlowUp = 2.0;

double finest_h(const AnyField& f) {
  if (const auto* f1 = std::get_if<Field1D>(&f)) return f1->grid().h();
  const auto& g = std::get<Field2D>(f).grid();
  return std::min(g.gx().h(), g.gy().h());
}

const Grid1D& x_grid(const AnyField& f) {
  if (const auto* f1 = std::get_if<Field1D>(&f)) return f1->grid();
  return std::get<Field2D>(f).grid().gx();
}

std::span<const double> values_of(const AnyField& f) {
  return std::visit([](const auto& v) { return v.values(); }, f);
}

std::size_t step_count(double t_end, double dt) {
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

}  // namespace

double default_time_step(const AnyField& f) {
  const double h = finest_h(f);
  return 0.1 * h * h;
}

struct TimeStepper::Impl {
  Frame frame;
  double c;
  double dt;
  double front_start;
  bool two_d;
  std::optional<Grid2D> grid2;
  Grid1D gx;
  std::optional<ConvectionDiffusion1D> op1;
  std::optional<SeparableOperator2D> op2;
  FaceData1D faces1;
  FaceData2D faces2;
  std::vector<double> u;
  std::vector<double> mu_x;  // per column
  std::vector<double> rhs;
  std::size_t n_steps = 0;

  Impl(const EvolveConfig& cfg, double step)
      : frame(cfg.frame),
        c(cfg.c),
        dt(step),
        front_start(cfg.front_start),
        two_d(std::holds_alternative<Field2D>(cfg.initial)),
        gx(x_grid(cfg.initial)) {
    const double shift = kMonotoneShift + 1.0 / dt;
    const double conv = frame == Frame::comoving ? c : 0.0;
    if (two_d) {
      const auto& f = std::get<Field2D>(cfg.initial);
      grid2 = f.grid();
      op2.emplace(f.grid(), conv, shift);
      faces2 = cfg.faces ? std::get<FaceData2D>(*cfg.faces) : FaceData2D::zeros(f.grid());
      faces2.check(f.grid());
    } else {
      op1.emplace(gx, conv, shift);
      if (cfg.faces) faces1 = std::get<FaceData1D>(*cfg.faces);
    }
    const auto v = values_of(cfg.initial);
    u.assign(v.begin(), v.end());
    rhs.resize(u.size());
    mu_x.resize(gx.n_cells());
    update_mu();
  }

  double time() const { return static_cast<double>(n_steps) * dt; }

  void update_mu() {
    if (frame == Frame::comoving) {
      for (std::size_t i = 0; i < gx.n_cells(); ++i) mu_x[i] = mu_at(gx.center(i));
      return;
    }
    // Quench at the interface nearest to front_start + c t.
    const double pos = front_start + c * time();
    const double k = std::round((pos - gx.x_min()) / gx.h());
    for (std::size_t i = 0; i < gx.n_cells(); ++i) {
      mu_x[i] = static_cast<double>(i) < k ? 1.0 : -1.0;
    }
  }

  double mu_of(std::size_t p) const { return mu_x[p % gx.n_cells()]; }

  void step() {
    for (std::size_t p = 0; p < u.size(); ++p) rhs[p] = u[p] / dt + reaction(mu_of(p), u[p]);
    if (two_d) {
      op2->solve(rhs, faces2);
    } else {
      op1->solve(rhs, faces1);
    }
    u.swap(rhs);
    ++n_steps;
    update_mu();
    double worst = 0.0;
    for (double v : u) worst = std::max(worst, std::abs(v));
    if (!(worst <= kBlowUp)) {
      throw InstabilityError("evolve: |u| reached " + std::to_string(worst) + " at t = " +
                             std::to_string(time()));
    }
  }

  double residual() const {
    // A_5 u = A_shift u - u / dt.
    std::vector<double> out(u.size());
    if (two_d) {
      op2->apply(u, faces2, out);
    } else {
      op1->apply(u, faces1, out);
    }
    double r = 0.0;
    for (std::size_t p = 0; p < u.size(); ++p) {
      r = std::max(r, std::abs(out[p] - u[p] / dt - reaction(mu_of(p), u[p])));
    }
    return r;
  }

  AnyField field() const {
    if (two_d) return Field2D(*grid2, u);
    return Field1D(gx, u);
  }
};

TimeStepper::TimeStepper(const EvolveConfig& cfg) {
  const auto v = values_of(cfg.initial);
  for (double x : v) {
    if (!(std::abs(x) <= kInitialBound)) {
      throw DomainError("evolve: initial values must lie in [-1.2, 1.2]");
    }
  }
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw DomainError("evolve: need t_end >= 0");
  if (!std::isfinite(cfg.c)) throw DomainError("evolve: c must be finite");
  double dt = cfg.dt > 0.0 ? cfg.dt : default_time_step(cfg.initial);
  if (cfg.t_end > 0.0) dt = cfg.t_end / static_cast<double>(std::max<std::size_t>(1, step_count(cfg.t_end, dt)));
  impl_ = std::make_unique<Impl>(cfg, dt);
}

TimeStepper::~TimeStepper() = default;
TimeStepper::TimeStepper(TimeStepper&&) noexcept = default;
TimeStepper& TimeStepper::operator=(TimeStepper&&) noexcept = default;

void TimeStepper::step() { impl_->step(); }
double TimeStepper::residual() const { return impl_->residual(); }
const std::vector<double>& TimeStepper::values() const { return impl_->u; }
AnyField TimeStepper::field() const { return impl_->field(); }
double TimeStepper::time() const { return impl_->time(); }
double TimeStepper::dt() const { return impl_->dt; }
std::size_t TimeStepper::steps() const { return impl_->n_steps; }

EvolveResult evolve(const EvolveConfig& cfg, const CheckpointHook& hook) {
  TimeStepper s(cfg);
  const std::size_t n = cfg.t_end > 0.0 ? step_count(cfg.t_end, s.dt()) : 0;
  const std::size_t every = std::max<std::size_t>(1, cfg.checkpoint_every);
  EvolveResult r{s.field(), {}, {}, 0};
  for (std::size_t k = 1; k <= n; ++k) {
    s.step();
    if (k % every == 0 || k == n) {
      r.residual_history.push_back(s.residual());
      r.checkpoint_times.push_back(s.time());
      if (hook) hook(k, s.time(), s);
    }
  }
  r.field = s.field();
  r.steps = n;
  return r;
}

bool comparison_preserved(const AnyField& lower, const AnyField& upper, EvolveConfig cfg,
                          std::size_t steps) {
  const auto lo = values_of(lower);
  const auto hi = values_of(upper);
  if (lo.size() != hi.size() || lower.index() != upper.index()) {
    throw DimensionError("comparison_preserved: fields differ in shape");
  }
  for (std::size_t p = 0; p < lo.size(); ++p) {
    if (lo[p] > hi[p]) throw ParameterError("comparison_preserved: need lower <= upper at start");
  }
  if (cfg.dt <= 0.0) cfg.dt = default_time_step(lower);
  cfg.t_end = cfg.dt * static_cast<double>(steps);
  cfg.initial = lower;
  TimeStepper a(cfg);
  cfg.initial = upper;
  TimeStepper b(cfg);
  const std::size_t every = std::max<std::size_t>(1, cfg.checkpoint_every);
  auto ordered = [&] {
    const auto& x = a.values();
    const auto& y = b.values();
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (x[p] > y[p] + 1e-8) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= steps; ++k) {
    a.step();
    b.step();
    if ((k % every == 0 || k == steps) && !ordered()) return false;
  }
  return true;
}

}  // namespace quench
