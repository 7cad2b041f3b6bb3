#include "quench/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "quench/classify.hpp"
#include "quench/errors.hpp"
#include "quench/evolve.hpp"
#include "quench/front1d.hpp"
#include "quench/periodic_orbits.hpp"
#include "quench/strip2d.hpp"
#include "quench/waves1d.hpp"

#ifndef QUENCH_VERSION
#define QUENCH_VERSION "0.0.0"
#endif

namespace quench {

using json = nlohmann::json;

std::string version_string() { return std::string(kProgramName) + " " + QUENCH_VERSION; }

namespace {

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Numbers are rewritten in %.17g so equivalent spellings give one header.
std::string canonical_value(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return fmt17(v);
  } catch (const std::exception&) {
  }
  return s;
}

HalfPeriod parse_kappa(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "inf" || t == "infinity" || t == "+inf") return HalfPeriod::infinite();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParameterError("--kappa: not a number: " + s);
  return HalfPeriod(v);
}

double finite_kappa(const std::string& s) {
  const HalfPeriod k = parse_kappa(s);
  if (k.is_infinite()) throw ParameterError("--kappa must be finite for this command");
  if (!(k.value() > std::numbers::pi)) throw DomainError("--kappa must exceed pi");
  return k.value();
}

// Validates c against the range every solver command supports.
void check_speed(double c, double hi) {
  if (!(c >= 0.0 && c <= hi)) {
    throw DomainError("--c must lie in [0, " + fmt17(hi) + "]");
  }
}

struct Output {
  std::string path;
  std::ostream* console;
  std::string header;  // without the leading "# "

  bool to_file() const { return !path.empty(); }

  template <typename Write>
  void emit(Write&& write) const {
    if (!to_file()) {
      write(*console);
      return;
    }
    std::ofstream f(path);
    if (!f) throw ParameterError("cannot open output file " + path);
    write(f);
    if (!f) throw ParameterError("failed writing " + path);
  }
};

// A defaulted option that conflicts with a given one played no part in the run.
bool excluded_by_given(const CLI::App& sub, const CLI::Option* o) {
  for (const CLI::Option* x : o->get_excludes()) {
    if (x->count() > 0) return true;
  }
  for (const CLI::Option* g : sub.get_options()) {
    if (g->count() == 0) continue;
    const auto& ex = g->get_excludes();
    if (ex.find(const_cast<CLI::Option*>(o)) != ex.end()) return true;
  }
  return false;
}

std::string header_for(const CLI::App& sub) {
  std::vector<std::pair<std::string, std::string>> flags;
  for (const CLI::Option* o : sub.get_options()) {
    const std::string name = o->get_single_name();
    if (name == "help" || name == "out" || name == "config" || name.empty()) continue;
    if (o->get_expected_min() == 0) {
      if (o->count() > 0) flags.emplace_back(name, "");
      continue;
    }
    if (o->count() == 0 && excluded_by_given(sub, o)) continue;
    std::string v = o->count() > 0 ? o->results().front() : o->get_default_str();
    if (v.empty()) continue;
    flags.emplace_back(name, canonical_value(v));
  }
  std::sort(flags.begin(), flags.end());
  std::string h = std::string(kProgramName) + " " + sub.get_name();
  for (const auto& [k, v] : flags) {
    h += " --" + k;
    if (!v.empty()) h += " " + v;
  }
  return h;
}

void print_json(std::ostream& os, const json& j) { os << j.dump() << '\n'; }

// ---------------------------------------------------------------- commands

struct PeriodicCmd {
  std::string kappa;
  double amplitude = 0.0;
  std::size_t n = 101;
  double extent = 20.0;

  void add(CLI::App& app) {
    auto* k = app.add_option("--kappa", kappa, "Half-period kappa > pi, or inf");
    auto* a = app.add_option("--amplitude", amplitude, "Orbit amplitude 0 < M < 1");
    k->excludes(a);
    app.add_option("--n", n, "Number of cells (rounded up to odd)");
    app.add_option("--extent", extent, "Sampled length for kappa = inf");
  }

  int run(const CLI::App& app, const Output& out) {
    HalfPeriod kp(0.0);
    json summary;
    if (app.count("--amplitude") > 0) {
      kp = HalfPeriod(half_period_of_amplitude(amplitude));
      summary["amplitude"] = amplitude;
    } else if (app.count("--kappa") > 0) {
      kp = parse_kappa(kappa);
    } else {
      throw ParameterError("periodic: give --kappa or --amplitude");
    }
    const PeriodicOrbit o = sample_orbit(kp, n, extent);
    summary["kappa"] = kp.is_infinite() ? json("inf") : json(kp.value());
    summary["amplitude"] = o.amplitude;
    summary["hamiltonian_level"] = o.hamiltonian_level;
    summary["hamiltonian_drift"] = o.hamiltonian_drift;
    out.emit([&](std::ostream& os) {
      os << "# " << out.header << '\n';
      os << "# kappa " << fmt17(kp.value()) << " amplitude " << fmt17(o.amplitude) << '\n';
      write_csv(os, o.profile);
    });
    if (out.to_file()) print_json(*out.console, summary);
    return kExitOk;
  }
};

struct WaveCmd {
  double d = 0.0;
  double xmin = -40.0;
  double xmax = 20.0;
  double h = 0.02;

  void add(CLI::App& app) {
    app.add_option("--d", d, "Wave speed d >= 0")->required();
    app.add_option("--xmin", xmin, "Left end of the grid");
    app.add_option("--xmax", xmax, "Right end of the grid");
    app.add_option("--h", h, "Grid spacing");
  }

  int run(const CLI::App&, const Output& out) {
    if (!(xmax > xmin) || !(h > 0.0)) throw DomainError("wave: need xmax > xmin and h > 0");
    const WaveProfile w = bistable_wave(d, Grid1D::aligned(xmin, xmax, h));
    out.emit([&](std::ostream& os) { write_csv(os, w.profile, out.header); });
    if (out.to_file()) {
      print_json(*out.console,
                 {{"d", d},
                  {"kind", w.kind == WaveKind::monotone ? "monotone" : "oscillatory_tail"}});
    }
    return kExitOk;
  }
};

struct Front1dCmd {
  double c = 0.0;
  double M = 50.0;
  double L = 50.0;
  bool cont = false;
  double h = kDefaultFrontH;
  double tol = kDefaultTol;

  void add(CLI::App& app) {
    app.add_option("--c", c, "Quench speed")->required();
    auto* m = app.add_option("--M", M, "Left truncation");
    auto* l = app.add_option("--L", L, "Right truncation");
    auto* k = app.add_flag("--continue", cont, "Domain continuation instead of fixed M, L");
    k->excludes(m)->excludes(l);
    app.add_option("--h", h, "Grid spacing");
    app.add_option("--tol", tol, "Monotone iteration tolerance");
  }

  int run(const CLI::App&, const Output& out) {
    json summary{{"c", c}};
    Field1D field = Field1D::constant(Grid1D(0.0, 1.0, 2), 0.0);
    if (cont) {
      ContinuedFront f = continue_front(c, h, tol);
      summary["M_final"] = f.M_final;
      summary["L_final"] = f.L_final;
      summary["solves"] = f.solves;
      field = std::move(f.field);
    } else {
      FrontSolution f = solve_truncated_front(c, M, L, h, tol);
      summary["M_final"] = M;
      summary["L_final"] = L;
      summary["iterations"] = f.report.iterations;
      field = std::move(f.field);
    }
    out.emit([&](std::ostream& os) { write_csv(os, field, out.header); });
    if (out.to_file()) print_json(*out.console, summary);
    return kExitOk;
  }
};

struct DichotomyCmd {
  double c = 0.0;
  double h = kDefaultFrontH;
  double tol = kDefaultTol;

  void add(CLI::App& app) {
    app.add_option("--c", c, "Quench speed")->required();
    app.add_option("--h", h, "Grid spacing");
    app.add_option("--tol", tol, "Monotone iteration tolerance");
  }

  int run(const CLI::App&, const Output& out) {
    const DichotomyVerdict v = verify_dichotomy(c, kDefaultProbe, h, tol);
    const json j{{"c", v.c},
                 {"verdict", to_string(v.verdict)},
                 {"wake_amplitude", v.wake_amplitude},
                 {"M_final", v.M_final},
                 {"L_final", v.L_final}};
    if (out.to_file()) {
      out.emit([&](std::ostream& os) { print_json(os, j); });
    }
    print_json(*out.console, j);
    return v.verdict == Verdict::inconclusive ? kExitInconclusive : kExitOk;
  }
};

constexpr double kMaxStripSpeed = 3.0;

struct StripCmd {
  double c = 0.0;
  std::string kappa;
  bool cont = false;
  double M = 50.0;
  double L = 50.0;
  double h = kDefaultStripH;
  double tol = kDefaultTol;

  void add(CLI::App& app) {
    app.add_option("--c", c, "Quench speed in [0, 3]")->required();
    app.add_option("--kappa", kappa, "Half-period kappa > pi")->required();
    auto* m = app.add_option("--M", M, "Left truncation");
    auto* l = app.add_option("--L", L, "Right truncation");
    auto* k = app.add_flag("--continue", cont, "Domain continuation instead of fixed M, L");
    k->excludes(m)->excludes(l);
    app.add_option("--h", h, "Grid spacing");
    app.add_option("--tol", tol, "Monotone iteration tolerance");
  }

  int run(const CLI::App&, const Output& out) {
    check_speed(c, kMaxStripSpeed);
    const HalfPeriod kp(finite_kappa(kappa));
    json summary{{"c", c}, {"kappa", kp.value()}, {"P", critical_quantity(c, kp)}};
    int code = kExitOk;
    if (cont) {
      const StripContinuation s = continue_strip(c, kp, tol, kDefaultStripWindow, kDefaultDomainTol, h);
      summary["verdict"] = to_string(s.verdict);
      summary["wake_amplitude"] = s.wake_amplitude;
      summary["M_final"] = s.M_final;
      summary["L_final"] = s.L_final;
      out.emit([&](std::ostream& os) { write_csv(os, s.field, out.header); });
      if (s.verdict == Verdict::inconclusive) code = kExitInconclusive;
    } else {
      const StripProblem p = make_strip_problem(c, kp, M, L, h, tol);
      const Field2D ceiling = comparison_ceiling(p);
      const auto v = ceiling.values();
      const StripSolution s = solve_truncated_strip(p, tol, std::vector<double>(v.begin(), v.end()));
      summary["M_final"] = M;
      summary["L_final"] = L;
      summary["iterations"] = s.report.iterations;
      out.emit([&](std::ostream& os) { write_csv(os, s.field, out.header); });
    }
    if (out.to_file()) print_json(*out.console, summary);
    return code;
  }
};

struct HinftyCmd {
  double c = 0.0;
  double h = kDefaultStripH;
  double tol = kDefaultTol;

  void add(CLI::App& app) {
    app.add_option("--c", c, "Quench speed in [0, 2)")->required();
    app.add_option("--h", h, "Grid spacing");
    app.add_option("--tol", tol, "Monotone iteration tolerance");
  }

  int run(const CLI::App&, const Output& out) {
    const HInftySolution s = solve_hinfty(c, tol, kDefaultStripWindow, kDefaultDomainTol, h);
    out.emit([&](std::ostream& os) { write_csv(os, s.field, out.header); });
    if (out.to_file()) {
      print_json(*out.console, {{"c", c}, {"M_final", s.M_final}, {"L_final", s.L_final}});
    }
    return kExitOk;
  }
};

struct SubsolutionCmd {
  double c = 0.0;
  double d = 0.0;
  double alpha = 0.0;
  std::string kappa;
  std::string mode = "exist";
  double M = 40.0;
  double L = 10.0;
  double h = kDefaultStripH;

  void add(CLI::App& app) {
    app.add_option("--c", c, "Quench speed")->required();
    app.add_option("--d", d, "Auxiliary wave speed")->required();
    app.add_option("--alpha", alpha, "Amplitude factor")->required();
    app.add_option("--kappa", kappa, "Half-period kappa > pi")->required();
    app.add_option("--mode", mode, "exist (subsolution) or nonexist (supersolution)")
        ->check(CLI::IsMember({"exist", "nonexist"}));
    app.add_option("--M", M, "Left extent");
    app.add_option("--L", L, "Right extent (exist mode)");
    app.add_option("--h", h, "Grid spacing");
  }

  int run(const CLI::App&, const Output& out) {
    const double kp = finite_kappa(kappa);
    const SubsolutionSpec spec{c, d, alpha, HalfPeriod(kp)};
    if (!(M > 0.0 && L >= 0.0 && h > 0.0)) throw DomainError("subsolution: need M > 0, L >= 0, h > 0");
    json summary{{"c", c}, {"d", d}, {"alpha", alpha}, {"kappa", kp}, {"mode", mode}};
    if (mode == "exist") {
      const Grid2D g(Grid1D::aligned(-M, L, h), orbit_grid(kp, h));
      const Field2D v = build_subsolution(spec, g);
      out.emit([&](std::ostream& os) { write_csv(os, v, out.header); });
    } else {
      const Grid2D g(Grid1D::aligned(-M, 0.0, h), orbit_grid(kp, h));
      const NonexistenceSupersolution v = build_nonexistence_supersolution_with_shift(spec, g);
      summary["shift"] = v.shift;
      out.emit([&](std::ostream& os) { write_csv(os, v.field, out.header); });
    }
    if (out.to_file()) print_json(*out.console, summary);
    return kExitOk;
  }
};

struct EvolveCmd {
  std::string frame = "comoving";
  double c = 0.0;
  int dim = 1;
  double t_end = 10.0;
  double dt = 0.0;
  double h = 0.1;
  double M = 20.0;
  double L = 20.0;
  std::string kappa = "6.283185307179586";
  std::string initial = "step";
  std::size_t snapshot_every = 0;

  void add(CLI::App& app) {
    app.add_option("--frame", frame, "comoving or lab")->check(CLI::IsMember({"comoving", "lab"}));
    app.add_option("--c", c, "Quench speed")->required();
    app.add_option("--dim", dim, "1 or 2")->check(CLI::IsMember({1, 2}));
    app.add_option("--t-end", t_end, "Final time");
    app.add_option("--dt", dt, "Time step (default 0.1 h^2)");
    app.add_option("--h", h, "Grid spacing");
    app.add_option("--M", M, "Left extent");
    app.add_option("--L", L, "Right extent");
    app.add_option("--kappa", kappa, "Strip half-period (dim 2)");
    app.add_option("--initial", initial, "step, bump or zero")
        ->check(CLI::IsMember({"step", "bump", "zero"}));
    app.add_option("--snapshot-every", snapshot_every, "Write a numbered snapshot every n steps");
  }

  int run(const CLI::App&, const Output& out) {
    check_speed(c, kMaxStripSpeed);
    if (!(M > 0.0 && L > 0.0 && h > 0.0)) throw DomainError("evolve: need M, L, h > 0");
    EvolveConfig cfg;
    cfg.frame = frame == "lab" ? Frame::lab : Frame::comoving;
    cfg.c = c;
    cfg.dt = dt;
    cfg.t_end = t_end;
    auto bump = [](double x) { return 0.5 * std::exp(-(x + 5.0) * (x + 5.0)); };
    if (dim == 1) {
      const Grid1D g = Grid1D::aligned(-M, L, h);
      if (initial == "step") {
        cfg.initial = Field1D::sample(g, [](double x) { return x < 0.0 ? 1.0 : 0.0; });
      } else if (initial == "bump") {
        cfg.initial = Field1D::sample(g, bump);
      } else {
        cfg.initial = Field1D::constant(g, 0.0);
      }
      if (cfg.frame == Frame::comoving && initial == "step") cfg.faces = FaceData1D{1.0, 0.0};
    } else {
      const double kp = finite_kappa(kappa);
      if (cfg.frame == Frame::comoving && initial == "step") {
        const StripProblem p = make_strip_problem(c, HalfPeriod(kp), M, L, h);
        cfg.initial = Field2D::sample(p.grid, [&](double x, double y) {
          return x < 0.0 ? p.profile[static_cast<std::size_t>(y / p.grid.gy().h())] : 0.0;
        });
        cfg.faces = p.boundary;
      } else {
        const Grid2D g(Grid1D::aligned(-M, L, h), orbit_grid(kp, h));
        cfg.initial = Field2D::sample(g, [&](double x, double y) {
          return initial == "bump" ? bump(x) * std::sin(std::numbers::pi * y / kp) : 0.0;
        });
      }
    }
    const std::size_t every = snapshot_every;
    cfg.checkpoint_every = every > 0 ? every : 100;
    std::size_t snap = 0;
    CheckpointHook hook;
    if (every > 0) {
      if (!out.to_file()) throw ParameterError("evolve: --snapshot-every needs --out");
      hook = [&](std::size_t step, double t, const TimeStepper& s) {
        if (step % every != 0) return;
        std::ostringstream name;
        const auto dot = out.path.rfind('.');
        const std::string stem = dot == std::string::npos ? out.path : out.path.substr(0, dot);
        name << stem << '_' << std::setw(6) << std::setfill('0') << ++snap << ".csv";
        std::ofstream f(name.str());
        if (!f) throw ParameterError("cannot open snapshot file " + name.str());
        const std::string hdr = out.header + " # t " + fmt17(t);
        std::visit([&](const auto& fld) { write_csv(f, fld, hdr); }, s.field());
      };
    }
    const EvolveResult r = evolve(cfg, hook);
    out.emit([&](std::ostream& os) {
      std::visit([&](const auto& fld) { write_csv(os, fld, out.header); }, r.field);
    });
    if (out.to_file()) {
      print_json(*out.console, {{"steps", r.steps},
                                {"t_end", t_end},
                                {"snapshots", snap},
                                {"residual_history", r.residual_history}});
    }
    return kExitOk;
  }
};

struct SweepCmd {
  double c_min = 0.0;
  double c_max = 2.2;
  std::size_t c_steps = 12;
  double kappa_min = 4.0;
  double kappa_max = 32.0;
  std::size_t kappa_steps = 7;
  bool kappa_inf = false;
  bool run_solvers = false;
  std::size_t workers = 0;
  double h = kDefaultStripH;

  void add(CLI::App& app) {
    app.add_option("--c-min", c_min, "Smallest speed");
    app.add_option("--c-max", c_max, "Largest speed");
    app.add_option("--c-steps", c_steps, "Number of speeds (uniform)");
    app.add_option("--kappa-min", kappa_min, "Smallest half-period");
    app.add_option("--kappa-max", kappa_max, "Largest half-period");
    app.add_option("--kappa-steps", kappa_steps, "Number of half-periods (geometric)");
    app.add_flag("--kappa-inf", kappa_inf, "Append the kappa = inf column");
    app.add_flag("--run-solvers", run_solvers, "Measure every cell with the solvers");
    app.add_option("--workers", workers, "Worker threads (0: hardware concurrency)");
    app.add_option("--h", h, "Grid spacing for the strip solves");
  }

  static std::vector<double> spaced(double lo, double hi, std::size_t n, bool geometric) {
    if (n == 0) throw ParameterError("sweep: step counts must be positive");
    if (n == 1) return {lo};
    if (!(hi >= lo)) throw ParameterError("sweep: need max >= min");
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(n - 1);
      v[k] = geometric ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    v.back() = hi;
    return v;
  }

  int run(const CLI::App&, const Output& out) {
    if (!(kappa_min > 0.0)) throw DomainError("sweep: kappa range must be positive");
    const std::vector<double> cs = spaced(c_min, c_max, c_steps, false);
    std::vector<HalfPeriod> ks;
    for (double k : spaced(kappa_min, kappa_max, kappa_steps, true)) ks.emplace_back(k);
    if (kappa_inf) ks.push_back(HalfPeriod::infinite());
    SweepOptions opts;
    opts.run_solvers = run_solvers;
    opts.workers = workers > 0 ? workers : std::max(1u, std::thread::hardware_concurrency());
    opts.h = h;
    const auto recs = sweep(cs, ks, opts);
    out.emit([&](std::ostream& os) { write_sweep_csv(os, recs, out.header); });
    std::size_t disagreements = 0;
    std::size_t failures = 0;
    for (const auto& r : recs) {
      disagreements += r.disagrees() ? 1 : 0;
      failures += r.error.empty() ? 0 : 1;
    }
    if (out.to_file()) {
      print_json(*out.console,
                 {{"cells", recs.size()}, {"disagreements", disagreements}, {"failures", failures}});
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------- config

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Splices the keys of a JSON config file into argv, right after the
// subcommand, skipping keys given explicitly on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw ParameterError("--config needs a file name");
      path = args[k + 1];
      args.erase(args.begin() + static_cast<long>(k), args.begin() + static_cast<long>(k) + 2);
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + static_cast<long>(k));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open config file " + path);
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ParameterError("config file must hold a JSON object");

  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = key.rfind("--", 0) == 0 ? key : "--" + key;
    if (has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_number()) {
      injected.push_back(flag);
      injected.push_back(value.is_number_float() ? fmt17(value.get<double>()) : value.dump());
    } else if (value.is_string()) {
      injected.push_back(flag);
      injected.push_back(value.get<std::string>());
    } else {
      throw ParameterError("config key " + key + " must be a number, string or boolean");
    }
  }
  std::size_t at = 0;
  while (at < args.size() && args[at].rfind("-", 0) == 0) ++at;
  if (at < args.size()) ++at;  // after the subcommand name
  args.insert(args.begin() + static_cast<long>(at), injected.begin(), injected.end());
  return args;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady patterns behind a directional quench"};
  app.name(kProgramName);
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  app.fallthrough(false);

  PeriodicCmd periodic;
  WaveCmd wave;
  Front1dCmd front1d;
  DichotomyCmd dichotomy;
  StripCmd strip;
  HinftyCmd hinfty;
  SubsolutionCmd subsolution;
  EvolveCmd evolve_cmd;
  SweepCmd sweep_cmd;

  std::string out_path;
  std::string config_path;  // consumed by apply_config; declared for --help
  std::vector<std::pair<CLI::App*, std::function<int(const CLI::App&, const Output&)>>> subs;
  auto add = [&](const char* name, const char* help, auto& cmd) {
    CLI::App* s = app.add_subcommand(name, help);
    s->set_help_flag("--help", "Print this help message and exit");
    s->option_defaults()->always_capture_default();
    cmd.add(*s);
    s->add_option("--out", out_path, "Output file (default: standard output)");
    s->add_option("--config", config_path, "JSON file of flag values; flags override it");
    subs.emplace_back(s, [&cmd](const CLI::App& a, const Output& o) { return cmd.run(a, o); });
  };
  add("periodic", "Sample the odd periodic orbit", periodic);
  add("wave", "Bistable travelling wave", wave);
  add("front1d", "One-dimensional quenching front", front1d);
  add("dichotomy", "Existence verdict of the 1D front (JSON)", dichotomy);
  add("strip", "Pattern on the strip of half-period kappa", strip);
  add("hinfty", "Single-interface pattern on the half plane", hinfty);
  add("subsolution", "Explicit sub- or supersolution", subsolution);
  add("evolve", "Parabolic time stepping", evolve_cmd);
  add("sweep", "Predicted and measured existence diagram", sweep_cmd);

  try {
    std::vector<std::string> args = apply_config(argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParameter;
  } catch (const QuenchError& e) {
    err << kProgramName << ": " << e.what() << '\n';
    return kExitParameter;
  }

  for (auto& [s, run] : subs) {
    if (!s->parsed()) continue;
    const Output o{out_path, &out, header_for(*s)};
    try {
      return run(*s, o);
    } catch (const ParameterError& e) {
      err << kProgramName << ' ' << s->get_name() << ": " << e.what() << '\n';
      return kExitParameter;
    } catch (const NumericalError& e) {
      err << kProgramName << ' ' << s->get_name() << ": " << e.what() << '\n';
      return kExitNumerical;
    } catch (const std::exception& e) {
      err << kProgramName << ' ' << s->get_name() << ": " << e.what() << '\n';
      return kExitNumerical;
    }
  }
  return kExitParameter;
}

}  // namespace quench
