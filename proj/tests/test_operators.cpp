#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "quench/errors.hpp"
#include "quench/operators.hpp"

using namespace quench;

namespace {

double sup_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("stencil guard rejects loss of the M-matrix property") {
  CHECK_NOTHROW(convection_diffusion_stencil(0.05, 39.0, 5.0));
  CHECK_THROWS_AS(convection_diffusion_stencil(0.05, 40.0, 5.0), ParameterError);
  const Stencil s = convection_diffusion_stencil(0.1, 2.0, 5.0);
  CHECK(s.lower < 0.0);
  CHECK(s.upper < 0.0);
  CHECK(s.diag == doctest::Approx(200.0 + 5.0));
}

TEST_CASE("1D solve inverts apply") {
  const Grid1D g = Grid1D::aligned(-3.0, 4.0, 0.05);
  ConvectionDiffusion1D op(g, 1.3, 5.0);
  std::vector<double> f(g.n_cells());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(g.center(i));
  const FaceData1D bc{0.7, -0.2};
  std::vector<double> u = f;
  op.solve(u, bc);
  std::vector<double> back(u.size());
  op.apply(u, bc, back);
  CHECK(sup_diff(back, f) < 1e-10);
}

TEST_CASE("1D operator is second order on a manufactured solution") {
  // u = exp(x) sin(x) solves -u'' - c u' + 5u = f with f computed exactly.
  auto run = [](std::size_t n) {
    const double c = 0.8;
    const Grid1D g(0.0, 2.0, n);
    ConvectionDiffusion1D op(g, c, 5.0);
    auto exact = [](double x) { return std::exp(x) * std::sin(x); };
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.center(i);
      const double ex = std::exp(x);
      const double d1 = ex * (std::sin(x) + std::cos(x));
      const double d2 = 2.0 * ex * std::cos(x);
      u[i] = -d2 - c * d1 + 5.0 * exact(x);
    }
    op.solve(u, {exact(0.0), exact(2.0)});
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(u[i] - exact(g.center(i))));
    return err;
  };
  const double e1 = run(50);
  const double e2 = run(100);
  CHECK(e1 < 2e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("2D separable solve inverts apply") {
  const Grid2D g(Grid1D::aligned(-2.0, 3.0, 0.1), Grid1D(0.0, 2.0 * std::numbers::pi, 37));
  SeparableOperator2D op(g, 1.0, 5.0);
  std::vector<double> f(g.size());
  for (std::size_t p = 0; p < f.size(); ++p) f[p] = std::cos(0.37 * static_cast<double>(p));
  FaceData2D bc = FaceData2D::zeros(g);
  for (std::size_t j = 0; j < g.ny(); ++j) bc.left[j] = std::sin(g.gy().center(j) / 2.0);
  for (std::size_t i = 0; i < g.nx(); ++i) bc.top[i] = 0.3;
  bc.bottom[3] = -0.5;
  std::vector<double> u = f;
  op.solve(u, bc);
  std::vector<double> back(u.size());
  op.apply(u, bc, back);
  CHECK(sup_diff(back, f) < 1e-9);
}

TEST_CASE("2D solve reproduces a separable manufactured solution") {
  // u = sin(pi y) exp(-x) with zero data on y faces.
  const Grid2D g(Grid1D(0.0, 1.0, 80), Grid1D(0.0, 1.0, 80));
  const double c = 0.5;
  SeparableOperator2D op(g, c, 5.0);
  const double pi = std::numbers::pi;
  std::vector<double> f(g.size());
  std::vector<double> exact(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double x = g.gx().center(i);
      const double y = g.gy().center(j);
      const double u = std::sin(pi * y) * std::exp(-x);
      exact[g.index(i, j)] = u;
      f[g.index(i, j)] = u * (-1.0 + pi * pi + c + 5.0);
    }
  }
  FaceData2D bc = FaceData2D::zeros(g);
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double s = std::sin(pi * g.gy().center(j));
    bc.left[j] = s;
    bc.right[j] = s * std::exp(-1.0);
  }
  op.solve(f, bc);
  CHECK(sup_diff(f, exact) < 2e-4);
}

TEST_CASE("2D operator rejects a coarse grid at high speed") {
  const Grid2D g(Grid1D(0.0, 1.0, 10), Grid1D(0.0, 1.0, 10));
  CHECK_THROWS_AS(SeparableOperator2D(g, 25.0, 5.0), ParameterError);
}
