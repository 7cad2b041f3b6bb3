#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "quench/classify.hpp"
#include "quench/cli.hpp"
#include "quench/errors.hpp"
#include "quench/evolve.hpp"
#include "quench/front1d.hpp"
#include "quench/periodic_orbits.hpp"
#include "quench/strip2d.hpp"
#include "quench/waves1d.hpp"

namespace py = pybind11;
using namespace quench;

namespace {

HalfPeriod half_period(double k) {
  return std::isinf(k) ? HalfPeriod::infinite() : HalfPeriod(k);
}

py::array_t<double> array(std::span<const double> v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

// (ny, nx) array, row j holding y_j.
py::array_t<double> array2d(const Field2D& f) {
  const auto& g = f.grid();
  py::array_t<double> a({static_cast<py::ssize_t>(g.ny()), static_cast<py::ssize_t>(g.nx())});
  std::copy(f.values().begin(), f.values().end(), a.mutable_data());
  return a;
}

py::dict field1d(const Field1D& f) {
  py::dict d;
  d["x"] = array(f.grid().centers());
  d["u"] = array(f.values());
  return d;
}

py::dict field2d(const Field2D& f) {
  py::dict d;
  d["x"] = array(f.grid().gx().centers());
  d["y"] = array(f.grid().gy().centers());
  d["u"] = array2d(f);
  return d;
}

py::dict record(const ClassificationRecord& r) {
  py::dict d;
  d["c"] = r.c;
  d["kappa"] = r.kappa.value();
  d["P"] = r.P;
  d["predicted"] = to_string(r.predicted);
  d["measured"] = to_string(r.measured);
  d["wake_amplitude"] = r.wake_amplitude;
  d["decay_rate_right"] = r.decay_rate_right ? py::cast(*r.decay_rate_right) : py::none();
  d["error"] = r.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady patterns behind a directional quench (compiled core)";

  // Translators run newest first, so the subclasses are registered last.
  auto& base = py::register_exception<QuenchError>(m, "QuenchError", PyExc_RuntimeError);
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  m.attr("__version__") = version_string().substr(std::string(kProgramName).size() + 1);

  m.def("critical_quantity", [](double c, double kappa) { return critical_quantity(c, half_period(kappa)); },
        py::arg("c"), py::arg("kappa"), "P(c; kappa) = c^2/4 + pi^2/kappa^2 (kappa may be inf)");
  m.def("predict", [](double c, double kappa) { return to_string(predict(c, half_period(kappa))); },
        py::arg("c"), py::arg("kappa"));

  m.def("complete_elliptic_K", &complete_elliptic_K, py::arg("k"));
  m.def("half_period_of_amplitude", &half_period_of_amplitude, py::arg("amplitude"));
  m.def("amplitude_of_half_period", &amplitude_of_half_period, py::arg("kappa"));
  m.def(
      "sample_orbit",
      [](double kappa, std::size_t n) {
        const PeriodicOrbit o = sample_orbit(half_period(kappa), n);
        py::dict d;
        d["y"] = array(o.profile.grid().centers());
        d["u"] = array(o.profile.values());
        d["slope"] = array(o.slope.values());
        d["amplitude"] = o.amplitude;
        d["hamiltonian_level"] = o.hamiltonian_level;
        d["hamiltonian_drift"] = o.hamiltonian_drift;
        return d;
      },
      py::arg("kappa"), py::arg("n") = 101);

  m.def(
      "bistable_wave",
      [](double d, double xmin, double xmax, double h) {
        const WaveProfile w = bistable_wave(d, Grid1D::aligned(xmin, xmax, h));
        py::dict out = field1d(w.profile);
        out["slope"] = array(w.slope.values());
        out["kind"] = w.kind == WaveKind::monotone ? "monotone" : "oscillatory_tail";
        return out;
      },
      py::arg("d"), py::arg("xmin") = -40.0, py::arg("xmax") = 20.0, py::arg("h") = 0.02);
  m.def("decay_rates", [](double c) {
    const DecayRates r = decay_rates(c);
    return py::make_tuple(r.lambda_right, r.m_left);
  }, py::arg("c"), "(lambda_right, m_left) of the linearised front tails");

  m.def(
      "solve_front",
      [](double c, double M, double L, double h, double tol) {
        const FrontSolution f = solve_truncated_front(c, M, L, h, tol);
        py::dict d = field1d(f.field);
        d["iterations"] = f.report.iterations;
        return d;
      },
      py::arg("c"), py::arg("M"), py::arg("L"), py::arg("h") = kDefaultFrontH,
      py::arg("tol") = kDefaultTol);
  m.def(
      "continue_front",
      [](double c, double h) {
        const ContinuedFront f = continue_front(c, h);
        py::dict d = field1d(f.field);
        d["M_final"] = f.M_final;
        d["L_final"] = f.L_final;
        return d;
      },
      py::arg("c"), py::arg("h") = kDefaultFrontH);
  m.def(
      "verify_dichotomy",
      [](double c, double h) {
        const DichotomyVerdict v = verify_dichotomy(c, kDefaultProbe, h);
        py::dict d;
        d["c"] = v.c;
        d["verdict"] = to_string(v.verdict);
        d["wake_amplitude"] = v.wake_amplitude;
        d["M_final"] = v.M_final;
        d["L_final"] = v.L_final;
        return d;
      },
      py::arg("c"), py::arg("h") = kDefaultFrontH);

  m.def(
      "solve_strip",
      [](double c, double kappa, double M, double L, double h) {
        const StripProblem p = make_strip_problem(c, HalfPeriod(kappa), M, L, h);
        const Field2D top = comparison_ceiling(p);
        const StripSolution s = solve_truncated_strip(
            p, kDefaultTol, std::vector<double>(top.values().begin(), top.values().end()));
        py::dict d = field2d(s.field);
        d["iterations"] = s.report.iterations;
        return d;
      },
      py::arg("c"), py::arg("kappa"), py::arg("M"), py::arg("L"), py::arg("h") = kDefaultStripH);
  m.def(
      "continue_strip",
      [](double c, double kappa, double h) {
        const StripContinuation s =
            continue_strip(c, HalfPeriod(kappa), kDefaultTol, kDefaultStripWindow, kDefaultDomainTol, h);
        py::dict d = field2d(s.field);
        d["verdict"] = to_string(s.verdict);
        d["wake_amplitude"] = s.wake_amplitude;
        d["far_field_error"] = s.far_field_error;
        d["M_final"] = s.M_final;
        d["L_final"] = s.L_final;
        return d;
      },
      py::arg("c"), py::arg("kappa"), py::arg("h") = kDefaultStripH);
  m.def(
      "solve_hinfty",
      [](double c, double h) {
        const HInftySolution s = solve_hinfty(c, kDefaultTol, kDefaultStripWindow, kDefaultDomainTol, h);
        py::dict d = field2d(s.field);
        d["M_final"] = s.M_final;
        d["L_final"] = s.L_final;
        return d;
      },
      py::arg("c"), py::arg("h") = kDefaultStripH, "Lower half y < 0; extend oddly for y > 0");

  m.def(
      "evolve_1d",
      [](double c, const std::string& frame, double xmin, double xmax, double h,
         const std::vector<double>& initial, double dt, double t_end, double left, double right) {
        EvolveConfig cfg;
        if (frame != "comoving" && frame != "lab") throw DomainError("frame must be comoving or lab");
        cfg.frame = frame == "lab" ? Frame::lab : Frame::comoving;
        cfg.c = c;
        cfg.dt = dt;
        cfg.t_end = t_end;
        const Grid1D g = Grid1D::aligned(xmin, xmax, h);
        if (initial.size() != g.n_cells()) {
          throw DimensionError("initial has " + std::to_string(initial.size()) + " values, grid has " +
                               std::to_string(g.n_cells()) + " cells");
        }
        cfg.initial = Field1D(g, initial);
        cfg.faces = FaceData1D{left, right};
        const EvolveResult r = evolve(cfg);
        py::dict d = field1d(std::get<Field1D>(r.field));
        d["residual_history"] = r.residual_history;
        d["steps"] = r.steps;
        return d;
      },
      py::arg("c"), py::arg("frame"), py::arg("xmin"), py::arg("xmax"), py::arg("h"),
      py::arg("initial"), py::arg("dt"), py::arg("t_end"), py::arg("left") = 0.0,
      py::arg("right") = 0.0);
  m.def(
      "grid_centers",
      [](double xmin, double xmax, double h) { return array(Grid1D::aligned(xmin, xmax, h).centers()); },
      py::arg("xmin"), py::arg("xmax"), py::arg("h"), "Cell centres of the aligned grid used by the solvers");

  m.def(
      "sweep",
      [](const std::vector<double>& cs, const std::vector<double>& ks, bool run_solvers, std::size_t workers,
         double h) {
        std::vector<HalfPeriod> kp;
        for (double k : ks) kp.push_back(half_period(k));
        SweepOptions opts;
        opts.run_solvers = run_solvers;
        opts.workers = workers;
        opts.h = h;
        std::vector<ClassificationRecord> recs;
        {
          py::gil_scoped_release release;
          recs = sweep(cs, kp, opts);
        }
        py::list out;
        for (const auto& r : recs) out.append(record(r));
        return out;
      },
      py::arg("c_grid"), py::arg("kappa_grid"), py::arg("run_solvers") = false, py::arg("workers") = 1,
      py::arg("h") = kDefaultStripH);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = parse_and_dispatch(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr)");
}
