#include <cmath>
#include <sstream>

#include "doctest.h"
#include "quench/errors.hpp"
#include "quench/grid.hpp"

using namespace quench;

TEST_CASE("aligned grid puts zero and both ends on interfaces") {
  const Grid1D g = Grid1D::aligned(-25.0, 30.0, 0.02);
  CHECK(g.h() <= 0.02 + 1e-15);
  const double zero_index = (0.0 - g.x_min()) / g.h();
  CHECK(std::abs(zero_index - std::round(zero_index)) < 1e-9);
  CHECK(g.n_cells() == 2750);

  const Grid1D odd = Grid1D::aligned(-1.0, 2.0 / 3.0, 0.1);
  const double z = -odd.x_min() / odd.h();
  CHECK(std::abs(z - std::round(z)) < 1e-9);
}

TEST_CASE("mu is never sampled at the interface on aligned grids") {
  const Grid1D g = Grid1D::aligned(-3.0, 2.0, 0.05);
  for (double x : g.centers()) CHECK(x != 0.0);
  CHECK(mu_at(-1e-9) == 1.0);
  CHECK(mu_at(1e-9) == -1.0);
  CHECK(mu_at(0.0) == -1.0);
}

TEST_CASE("grid rejects degenerate input") {
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), DomainError);
  CHECK_THROWS_AS(Grid1D::aligned(0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(Field1D(Grid1D(0.0, 1.0, 4), {1.0, 2.0}), DimensionError);
  CHECK_THROWS_AS(Field1D(Grid1D(0.0, 1.0, 2), {1.0, NAN}), ParameterError);
}

TEST_CASE("indices_in selects the centres inside the window") {
  const Grid1D g(-1.0, 1.0, 20);
  const auto idx = g.indices_in({-0.5, 0.5});
  CHECK(idx.size() == 10);
  CHECK(g.center(idx.front()) == doctest::Approx(-0.45));
}

TEST_CASE("extend_front is exact at centres and continuous at faces") {
  const Grid1D g(-2.0, 2.0, 8);
  const Field1D f = Field1D::sample(g, [](double x) { return 0.5 - 0.2 * x; });
  const auto e = extend_front(f, 1.0, 0.0);
  for (std::size_t i = 0; i < g.n_cells(); ++i) CHECK(e(g.center(i)) == f[i]);
  CHECK(e(-2.0) == 1.0);
  CHECK(e(-5.0) == 1.0);
  CHECK(e(2.0) == 0.0);
  CHECK(e(-2.0 + 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e(0.1) == doctest::Approx(0.48));
}

TEST_CASE("extend_strip uses the left profile and face values") {
  const Grid2D g(Grid1D(-1.0, 1.0, 4), Grid1D(0.0, 1.0, 2));
  const Field2D f = Field2D::constant(g, 0.5);
  const Field1D left = Field1D::constant(g.gy(), 0.8);
  const auto e = extend_strip(f, left, 0.0);
  CHECK(e(-3.0, 0.25) == 0.8);
  CHECK(e(3.0, 0.25) == 0.0);
  CHECK(e(-0.75, 0.25) == 0.5);
  CHECK(e(0.0, 0.0) == 0.0);
  CHECK(e(-1.0, 0.25) == doctest::Approx(0.8));
  CHECK_THROWS_AS(extend_strip(f, Field1D::constant(Grid1D(0.0, 2.0, 2), 1.0), 0.0),
                  DimensionError);
}

TEST_CASE("2D layout stores y as the row index") {
  const Grid2D g(Grid1D(0.0, 3.0, 3), Grid1D(0.0, 2.0, 2));
  const Field2D f = Field2D::sample(g, [](double x, double y) { return x + 10 * y; });
  CHECK(f.values()[g.index(2, 1)] == doctest::Approx(2.5 + 15.0));
  CHECK(f.slice_at_x(1)[1] == doctest::Approx(1.5 + 15.0));
  CHECK(f.slice_at_y(0)[2] == doctest::Approx(2.5 + 5.0));
}

TEST_CASE("csv round trip keeps all digits") {
  const Grid1D g(-1.0, 2.0, 7);
  const Field1D f = Field1D::sample(g, [](double x) { return std::exp(-x) / 3.0; });
  std::stringstream ss;
  write_csv(ss, f, "quench-patterns test");
  CHECK(ss.str().rfind("# quench-patterns test\nx,u\n", 0) == 0);
  const Field1D back = read_csv_1d(ss);
  REQUIRE(back.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
  CHECK(back.grid().h() == doctest::Approx(g.h()));
}
