#include "quench/classify.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "quench/errors.hpp"
#include "quench/strip2d.hpp"

namespace quench {

double critical_quantity(double c, HalfPeriod kappa) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("critical_quantity: need c >= 0");
  if (kappa.is_infinite()) return c * c / 4.0;
  const double k = kappa.value();
  if (!(k > std::numbers::pi)) throw DomainError("critical_quantity: need kappa > pi");
  return c * c / 4.0 + std::numbers::pi * std::numbers::pi / (k * k);
}

std::string to_string(Prediction p) {
  switch (p) {
    case Prediction::exists: return "exists";
    case Prediction::not_exists: return "not_exists";
    case Prediction::critical: return "critical";
  }
  return "?";
}

Prediction predict(double c, HalfPeriod kappa) {
  const double P = critical_quantity(c, kappa);
  if (P < 1.0 - kCriticalBand) return Prediction::exists;
  if (P > 1.0 + kCriticalBand) return Prediction::not_exists;
  return Prediction::critical;
}

double fit_decay_rate(const Field1D& field, Interval window, DecayTarget target) {
  const Grid1D& g = field.grid();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i : g.indices_in(window)) {
    const double v = target == DecayTarget::value_to_zero ? field[i] : 1.0 - field[i];
    if (!(v > 1e-12 && v < 1.0 - 1e-12)) continue;
    const double x = g.center(i);
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 10) {
    throw InsufficientDataError("fit_decay_rate: only " + std::to_string(n) +
                                " usable points in the window");
  }
  const double dn = static_cast<double>(n);
  const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  return std::abs(slope);
}

std::string to_string(Measured m) {
  switch (m) {
    case Measured::nontrivial: return "nontrivial";
    case Measured::trivial: return "trivial";
    case Measured::inconclusive: return "inconclusive";
    case Measured::not_run: return "not_run";
  }
  return "?";
}

Measured to_measured(Verdict v) {
  switch (v) {
    case Verdict::nontrivial: return Measured::nontrivial;
    case Verdict::trivial: return Measured::trivial;
    case Verdict::inconclusive: return Measured::inconclusive;
  }
  return Measured::inconclusive;
}

bool ClassificationRecord::disagrees() const {
  if (predicted == Prediction::exists) return measured == Measured::trivial;
  if (predicted == Prediction::not_exists) return measured == Measured::nontrivial;
  return false;
}

namespace {

constexpr Interval kRightTail{3.0, 10.0};

void run_cell(ClassificationRecord& r, const SweepOptions& opts) {
  try {
    if (r.kappa.is_infinite()) {
      const DichotomyVerdict d =
          verify_dichotomy(r.c, kDefaultProbe, kDefaultFrontH, opts.tol, opts.domain_tol);
      r.measured = to_measured(d.verdict);
      r.wake_amplitude = d.wake_amplitude;
      return;
    }
    const StripContinuation s = continue_strip(r.c, r.kappa, opts.tol, kDefaultStripWindow,
                                               opts.domain_tol, opts.h, opts.max_iterations);
    r.measured = to_measured(s.verdict);
    r.wake_amplitude = s.wake_amplitude;
    if (s.verdict == Verdict::nontrivial) {
      // Mid-line slice, where the pattern is largest.
      const Field1D mid = s.field.slice_at_y(s.field.grid().ny() / 2);
      try {
        r.decay_rate_right = fit_decay_rate(mid, kRightTail, DecayTarget::value_to_zero);
      } catch (const InsufficientDataError&) {
      }
    }
  } catch (const std::exception& e) {
    r.measured = Measured::inconclusive;
    r.error = e.what();
  }
}

}  // namespace

std::vector<ClassificationRecord> sweep(const std::vector<double>& c_grid,
                                        const std::vector<HalfPeriod>& kappa_grid,
                                        const SweepOptions& opts) {
  for (double c : c_grid) {
    if (!(c >= 0.0 && c <= 3.0)) throw DomainError("sweep: c must lie in [0, 3]");
  }
  for (HalfPeriod k : kappa_grid) {
    if (!k.is_infinite() && !(k.value() > std::numbers::pi && k.value() <= 64.0)) {
      throw DomainError("sweep: kappa must lie in (pi, 64] or be infinite");
    }
  }
  std::vector<ClassificationRecord> out;
  out.reserve(c_grid.size() * kappa_grid.size());
  for (double c : c_grid) {
    for (HalfPeriod k : kappa_grid) {
      out.push_back({c, k, critical_quantity(c, k), predict(c, k), Measured::not_run,
                     std::numeric_limits<double>::quiet_NaN(), std::nullopt, {}});
    }
  }
  if (!opts.run_solvers || out.empty()) return out;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < out.size(); k = next++) run_cell(out[k], opts);
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(opts.workers, out.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<ClassificationRecord>& records,
                     const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "c,kappa,P,predicted,measured,wake_amplitude\n";
  for (const auto& r : records) {
    os << fmt(r.c) << ',' << fmt(r.kappa.value()) << ',' << fmt(r.P) << ','
       << to_string(r.predicted) << ',' << to_string(r.measured) << ','
       << fmt(r.wake_amplitude) << '\n';
  }
}

}  // namespace quench
