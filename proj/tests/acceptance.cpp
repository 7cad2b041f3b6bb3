// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quench/classify.hpp"
#include "quench/cli.hpp"
#include "quench/evolve.hpp"
#include "quench/front1d.hpp"
#include "quench/monotone.hpp"
#include "quench/periodic_orbits.hpp"
#include "quench/strip2d.hpp"

using namespace quench;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoPi = 2 * kPi;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "FAILED ") + what);
  }
};

std::string num(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

std::vector<double> as_vector(std::span<const double> v) { return {v.begin(), v.end()}; }

// 0 <= u <= min(theta, profile) + 1e-8 on the final truncation.
void check_sandwich(Outcome& o, const StripProblem& p, const Field2D& u, const std::string& label) {
  const Field2D top = comparison_ceiling(p);
  double below = 0.0;
  double above = 0.0;
  for (std::size_t q = 0; q < u.size(); ++q) {
    below = std::max(below, -u.values()[q]);
    above = std::max(above, u.values()[q] - top.values()[q]);
  }
  o.check(below <= 0.0 && above <= 1e-8,
          label + " sandwich (min " + num(0.0 - below) + ", excess over ceiling " + num(above) + ")");
}

// ------------------------------------------------------------------ state

// Strip runs shared between criteria 5, 6 and 8.
std::map<double, StripContinuation> g_strips;

const StripContinuation& strip_at(double c) {
  auto it = g_strips.find(c);
  if (it == g_strips.end()) it = g_strips.emplace(c, continue_strip(c, HalfPeriod(kTwoPi))).first;
  return it->second;
}

// ------------------------------------------------------------------ criteria

Outcome criterion1() {
  Outcome o;
  auto run = [&](const std::string& c, nlohmann::json& j, int& code) {
    std::ostringstream out;
    std::ostringstream err;
    const double t = timed([&] { code = parse_and_dispatch({"dichotomy", "--c", c}, out, err); });
    j = nlohmann::json::parse(out.str());
    o.check(t <= 30.0, "dichotomy --c " + c + " in " + num(t, 3) + " s");
  };
  nlohmann::json j;
  int code = 0;
  run("1.0", j, code);
  o.check(code == 0 && j["verdict"] == "nontrivial" && j["wake_amplitude"].get<double>() >= 0.9,
          "c = 1: " + j["verdict"].get<std::string>() + ", wake " + num(j["wake_amplitude"].get<double>(), 7));
  run("2.5", j, code);
  o.check(code == 0 && j["verdict"] == "trivial" && j["wake_amplitude"].get<double>() <= 1e-3,
          "c = 2.5: " + j["verdict"].get<std::string>() + ", wake " + num(j["wake_amplitude"].get<double>()));
  double wake200 = 1.0;
  const double t = timed([&] {
    const FrontSolution f = solve_truncated_front(2.5, 200.0, kDichotomyL, kDefaultFrontH);
    wake200 = 0.0;
    for (std::size_t i : f.field.grid().indices_in(kDefaultProbe)) wake200 = std::max(wake200, std::abs(f.field[i]));
  });
  o.check(wake200 <= 1e-3, "c = 2.5 at M = 200: wake " + num(wake200) + " (" + num(t, 3) + " s)");
  run("2.0", j, code);
  o.check(code == kExitInconclusive && j["verdict"] == "inconclusive",
          "c = 2: " + j["verdict"].get<std::string>() + ", exit " + std::to_string(code));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const ContinuedFront f = continue_front(1.0);
  // Positive root of l^2 - c l - 1 (right) by Newton; m(1) = 1 exactly.
  double l = 2.0;
  for (int i = 0; i < 60; ++i) l -= (l * l - l - 1.0) / (2.0 * l - 1.0);
  const double right = fit_decay_rate(f.field, {5.0, 12.0}, DecayTarget::value_to_zero);
  const double left = fit_decay_rate(f.field, {-12.0, -5.0}, DecayTarget::value_to_one);
  o.check(std::abs(right / l - 1.0) <= 0.02, "right rate " + num(right, 6) + " vs " + num(l, 6));
  o.check(std::abs(left - 1.0) <= 0.02, "left rate " + num(left, 6) + " vs 1");
  return o;
}

double kappa_by_quadrature(double m) {
  const int n = 4000;
  const double a = kPi / 2.0;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double s = std::sin(a * k / n);
    sum += ((k == 0 || k == n) ? 0.5 : 1.0) / std::sqrt(1.0 - m * m * (1.0 + s * s) / 2.0);
  }
  return 2.0 * sum * a / n;
}

Outcome criterion3() {
  Outcome o;
  double round_trip = 0.0;
  double agm = 0.0;
  double small = 0.0;
  const double t = timed([&] {
    for (int k = 1; k <= 9; ++k) {
      const double m = k / 10.0;
      round_trip = std::max(round_trip, std::abs(amplitude_of_half_period(half_period_of_amplitude(m)) - m));
    }
    small = std::abs(half_period_of_amplitude(1e-3) - kPi);
    for (double m : {0.1, 0.5, 0.9}) agm = std::max(agm, std::abs(half_period_of_amplitude(m) - kappa_by_quadrature(m)));
  });
  o.check(round_trip <= 1e-9, "round trip " + num(round_trip));
  o.check(small <= 1e-4, "|kappa(1e-3) - pi| " + num(small));
  o.check(agm <= 1e-10, "AGM vs quadrature " + num(agm));
  o.check(t <= 1.0, "runtime " + num(t, 3) + " s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  double worst = 0.0;
  std::size_t count = 0;
  for (double k : {3.3, 3.5, 4.0, 5.0, kTwoPi, 8.0, 10.0, 16.0}) {
    for (std::size_t n : {11u, 101u, 1001u}) {
      worst = std::max(worst, sample_orbit(HalfPeriod(k), n).hamiltonian_drift);
      ++count;
    }
  }
  o.check(worst <= 1e-8, std::to_string(count) + " orbits, max drift " + num(worst));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const double amp = amplitude_of_half_period(kTwoPi);
  const double t1 = timed([] { strip_at(1.0); });
  const auto& a = strip_at(1.0);
  o.check(std::abs(a.wake_amplitude / amp - 1.0) <= 0.02 && t1 <= 600.0,
          "c = 1: wake " + num(a.wake_amplitude, 7) + " vs M(2pi) " + num(amp, 7) + " (" + num(t1, 3) + " s)");
  const double t2 = timed([] { strip_at(1.9); });
  const auto& b = strip_at(1.9);
  o.check(b.wake_amplitude <= 1e-3 && t2 <= 600.0,
          "c = 1.9: wake " + num(b.wake_amplitude) + " (" + num(t2, 3) + " s)");
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (double c : {1.0, 1.9}) {
    const auto& s = strip_at(c);
    check_sandwich(o, s.problem, s.field, "strip c = " + num(c));
  }
  const double kap = kTwoPi;
  const StripProblem p = make_strip_problem(0.5, HalfPeriod(kap), 40.0, 10.0);
  const StripSolution s = solve_truncated_strip(p, kDefaultTol, as_vector(comparison_ceiling(p).values()));
  check_sandwich(o, p, s.field, "strip c = 0.5");
  const StripSolution s1 = solve_truncated_strip(p, kDefaultTol);
  check_sandwich(o, p, s1.field, "strip c = 0.5 from 1");
  const Field2D v = build_subsolution({0.5, 1.9, amplitude_of_half_period(kap), HalfPeriod(kap)}, p.grid);
  double gap = -1.0;
  for (std::size_t q = 0; q < v.size(); ++q) gap = std::max(gap, v.values()[q] - s.field.values()[q]);
  o.check(gap <= 1e-8, "subsolution bracket max(V - Xi) " + num(gap));
  return o;
}

Outcome criterion8() {
  Outcome o;
  {
    const ContinuedFront f = continue_front(1.0);
    EvolveConfig cfg;
    cfg.c = 1.0;
    cfg.dt = 0.5;
    cfg.t_end = 600.0;
    cfg.initial = Field1D::sample(f.field.grid(), [](double x) { return x < 0.0 ? 1.0 : 0.0; });
    cfg.faces = FaceData1D{1.0, 0.0};
    const Field1D u = std::get<Field1D>(evolve(cfg).field);
    double worst = 0.0;
    for (std::size_t i : u.grid().indices_in({-10.0, 10.0})) worst = std::max(worst, std::abs(u[i] - f.field[i]));
    o.check(worst <= 1e-4, "1D c = 1: sup difference " + num(worst));
  }
  {
    const auto& s = strip_at(0.5);
    EvolveConfig cfg;
    cfg.c = 0.5;
    cfg.dt = 1.0;
    cfg.t_end = 3000.0;
    cfg.initial = comparison_ceiling(s.problem);
    cfg.faces = s.problem.boundary;
    TimeStepper ts(cfg);
    double res = ts.residual();
    while (ts.time() < cfg.t_end && res > 1e-10) {
      for (int k = 0; k < 50; ++k) ts.step();
      res = ts.residual();
    }
    const Field2D u = std::get<Field2D>(ts.field());
    const Grid2D& g = u.grid();
    double worst = 0.0;
    for (std::size_t i : g.gx().indices_in({-10.0, 10.0})) {
      for (std::size_t j = 0; j < g.ny(); ++j) worst = std::max(worst, std::abs(u.at(i, j) - s.field.at(i, j)));
    }
    o.check(worst <= 1e-4, "2D c = 0.5, kappa = 2pi: sup difference " + num(worst) + " at t = " +
                               num(ts.time(), 5) + " (residual " + num(res) + ")");
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  const HInftySolution r = solve_hinfty(1.0);
  const Grid2D& g = r.field.grid();
  double left = 0.0;
  double bottom = 0.0;
  for (double y = -15.0; y <= 0.0; y += 0.01) left = std::max(left, std::abs(r(-15.0, y) + std::tanh(y / std::numbers::sqrt2)));
  const ContinuedFront th = continue_front(1.0);
  const auto et = extend_front(th.field, 1.0, 0.0);
  for (double x = -15.0; x <= 15.0; x += 0.01) bottom = std::max(bottom, std::abs(r(x, -15.0) - et(x)));
  double up = 0.0;
  for (std::size_t j = 0; j + 1 < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) up = std::max(up, r.field.at(i, j + 1) - r.field.at(i, j));
  }
  o.check(left <= 1e-3, "left slice vs -tanh(y/sqrt 2): " + num(left));
  o.check(bottom <= 1e-3, "bottom slice vs theta: " + num(bottom));
  o.check(up <= 1e-12, "largest increase in y: " + num(up));
  // theta(x) broadcast in y bounds the pattern from above.
  double excess = 0.0;
  double low = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      excess = std::max(excess, r.field.at(i, j) - r.problem.theta[i]);
      low = std::min(low, r.field.at(i, j));
    }
  }
  o.check(low >= 0.0 && excess <= 1e-8, "0 <= u <= theta(x): min " + num(low) + ", excess " + num(excess));
  return o;
}

Outcome criterion10(bool full, double h) {
  Outcome o;
  std::vector<double> cs;
  std::vector<HalfPeriod> ks;
  if (full) {
    for (int k = 0; k < 12; ++k) cs.push_back(2.2 * k / 11.0);
    for (double k : {4.0, 5.0, kTwoPi, 8.0, 10.0, 16.0, 32.0}) ks.emplace_back(k);
    ks.push_back(HalfPeriod::infinite());
  } else {
    cs = {1.0, std::sqrt(3.0), 1.9};
    ks = {HalfPeriod(5.0), HalfPeriod(kTwoPi), HalfPeriod(8.0)};
  }
  SweepOptions opts;
  opts.run_solvers = true;
  opts.workers = std::max(1u, std::thread::hardware_concurrency());
  opts.max_iterations = 20000;
  // Near-critical cells need 1e4+ iterations; at h = 0.05 the 3 x 3 sweep alone takes ~10 min on one core.
  opts.h = h;
  std::vector<ClassificationRecord> recs;
  const double t = timed([&] { recs = sweep(cs, ks, opts); });
  o.notes.push_back("h = " + num(h) + ", " + std::to_string(opts.workers) + " worker(s)");
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (const auto& r : recs) {
    const std::string cell = "(c " + num(r.c) + ", kappa " + num(r.kappa.value()) + ", P " + num(r.P) + ")";
    const bool far = std::abs(r.P - 1.0) > 0.1;
    if (far) {
      ++checked;
      const bool agree = (r.predicted == Prediction::exists && r.measured == Measured::nontrivial) ||
                         (r.predicted == Prediction::not_exists && r.measured == Measured::trivial);
      if (!agree) {
        ++bad;
        o.check(false, cell + " predicted " + to_string(r.predicted) + ", measured " + to_string(r.measured) +
                           (r.error.empty() ? "" : " [" + r.error + "]"));
      }
    } else if (r.disagrees() || !r.error.empty()) {
      o.notes.push_back("reported " + cell + ": predicted " + to_string(r.predicted) + ", measured " +
                        to_string(r.measured) + (r.error.empty() ? "" : " [" + r.error.substr(0, 80) + "]"));
    }
  }
  if (!full) {
    o.check(recs[1].predicted == Prediction::exists && recs[4].predicted == Prediction::critical &&
                recs[7].predicted == Prediction::not_exists,
            "kappa = 2pi predictions (exists, critical, not_exists)");
  }
  const double budget = full ? 7200.0 : 600.0;
  o.check(bad == 0, std::to_string(recs.size()) + " cells, " + std::to_string(checked) +
                        " with |P - 1| > 0.1, " + std::to_string(bad) + " disagreements");
  o.check(t <= budget, "runtime " + num(t, 4) + " s (budget " + num(budget) + " s)");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  bool full = false;
  std::vector<int> only;
  double sweep_h = 0.1;
  app.add_flag("--full-sweep", full, "Run the 12 x 8 sweep for criterion 10");
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--sweep-h", sweep_h, "Grid spacing for the criterion 10 sweep")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  reset_monotone_violation();
  const std::vector<std::pair<int, std::string>> names = {
      {1, "1D dichotomy"},      {2, "decay rates"},         {3, "period map"},
      {4, "Hamiltonian drift"}, {5, "2D threshold at 2pi"}, {6, "comparison sandwich"},
      {7, "monotone integrity"}, {8, "time-stepper cross-check"}, {9, "half-plane far fields"},
      {10, full ? "sweep 12 x 8" : "sweep 3 x 3"}};
  const std::set<int> selected(only.begin(), only.end());
  auto wanted = [&](int k) { return selected.empty() || selected.count(k) > 0; };

  std::map<int, Outcome> results;
  std::map<int, double> times;
  auto run = [&](int k, const std::function<Outcome()>& f) {
    if (!wanted(k)) return;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      results[k] = f();
    } catch (const std::exception& e) {
      Outcome o;
      o.check(false, std::string("exception: ") + e.what());
      results[k] = o;
    }
    times[k] = seconds_since(t0);
    std::fprintf(stderr, "[criterion %d done in %.1f s]\n", k, times[k]);
  };
  run(1, criterion1);
  run(2, criterion2);
  run(3, criterion3);
  run(4, criterion4);
  run(5, criterion5);
  run(6, criterion6);
  run(8, criterion8);
  run(9, criterion9);
  run(10, [&] { return criterion10(full, sweep_h); });
  run(7, [] {
    Outcome o;
    const double v = max_monotone_violation();
    o.check(v <= 1e-12, "max positive iterate increment over this run " + num(v));
    return o;
  });

  int failures = 0;
  for (const auto& [k, name] : names) {
    auto it = results.find(k);
    if (it == results.end()) continue;
    const Outcome& o = it->second;
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s (%.1f s)\n", k, o.pass ? "PASS" : "FAIL", name.c_str(), times[k]);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
