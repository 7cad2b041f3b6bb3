#include "quench/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "quench/errors.hpp"

namespace quench {

namespace {

bool near_integer(double v, double tol) {
  return std::abs(v - std::round(v)) <= tol * std::max(1.0, std::abs(v));
}

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ParameterError(std::string(what) + ": non-finite sample");
    }
  }
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Fractional position of x among the cell centres, snapped onto a centre
// when within rounding of it so that sample points evaluate exactly.
double center_coordinate(const Grid1D& g, double x) {
  double s = (x - g.x_min()) / g.h() - 0.5;
  if (std::abs(s - std::round(s)) < 1e-9) s = std::round(s);
  return s;
}

struct Bracket {
  // value = (1 - t) * a + t * b
  double a;
  double b;
  double t;
};

}  // namespace

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_cells)
    : x_min_(x_min), x_max_(x_max), n_(n_cells), h_(0.0) {
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw DomainError("Grid1D: need finite x_min < x_max");
  }
  if (n_cells < 2) throw DomainError("Grid1D: need at least 2 cells");
  h_ = (x_max - x_min) / static_cast<double>(n_cells);
}

Grid1D Grid1D::aligned(double x_min, double x_max, double h_max) {
  if (!(h_max > 0.0)) throw DomainError("Grid1D::aligned: h must be positive");
  if (!(x_min < x_max)) throw DomainError("Grid1D::aligned: need x_min < x_max");
  const double len = x_max - x_min;
  auto n0 = static_cast<std::size_t>(std::ceil(len / h_max - 1e-9));
  n0 = std::max<std::size_t>(n0, 2);
  if (!(x_min < 0.0 && x_max > 0.0)) return Grid1D(x_min, x_max, n0);
  const double frac = -x_min / len;
  for (std::size_t n = n0; n < 64 * n0 + 4096; ++n) {
    if (near_integer(frac * static_cast<double>(n), 1e-9)) {
      return Grid1D(x_min, x_max, n);
    }
  }
  throw DomainError("Grid1D::aligned: cannot place x=0 on a cell interface");
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = center(i);
  return xs;
}

std::vector<std::size_t> Grid1D::indices_in(Interval window) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n_; ++i) {
    if (window.contains(center(i))) idx.push_back(i);
  }
  return idx;
}

bool Grid1D::nodes_aligned_with(const Grid1D& other, double tol) const {
  if (std::abs(h_ - other.h_) > tol * h_) return false;
  return near_integer((other.x_min_ - x_min_) / h_, tol);
}

bool Grid1D::operator==(const Grid1D& other) const {
  return x_min_ == other.x_min_ && x_max_ == other.x_max_ && n_ == other.n_;
}

Field1D::Field1D(Grid1D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.n_cells()) {
    throw DimensionError("Field1D: value count does not match grid");
  }
  require_finite(values_, "Field1D");
}

Field1D Field1D::constant(Grid1D grid, double value) {
  const auto n = grid.n_cells();
  return Field1D(std::move(grid), std::vector<double>(n, value));
}

Field1D Field1D::sample(Grid1D grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.n_cells());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.center(i));
  return Field1D(std::move(grid), std::move(v));
}

double Field1D::max() const {
  return *std::max_element(values_.begin(), values_.end());
}
double Field1D::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

Field2D::Field2D(Grid2D grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DimensionError("Field2D: value count does not match grid");
  }
  require_finite(values_, "Field2D");
}

Field2D Field2D::constant(Grid2D grid, double value) {
  const auto n = grid.size();
  return Field2D(std::move(grid), std::vector<double>(n, value));
}

Field2D Field2D::sample(Grid2D grid,
                        const std::function<double(double, double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double y = grid.gy().center(j);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      v[grid.index(i, j)] = f(grid.gx().center(i), y);
    }
  }
  return Field2D(std::move(grid), std::move(v));
}

Field1D Field2D::slice_at_x(std::size_t i) const {
  std::vector<double> v(grid_.ny());
  for (std::size_t j = 0; j < grid_.ny(); ++j) v[j] = at(i, j);
  return Field1D(grid_.gy(), std::move(v));
}

Field1D Field2D::slice_at_y(std::size_t j) const {
  const auto first = values_.begin() + static_cast<std::ptrdiff_t>(grid_.index(0, j));
  return Field1D(grid_.gx(),
                 std::vector<double>(first, first + static_cast<std::ptrdiff_t>(grid_.nx())));
}

double Field2D::max() const {
  return *std::max_element(values_.begin(), values_.end());
}
double Field2D::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double mu_at(double x) { return x < 0.0 ? 1.0 : -1.0; }

namespace {

// Locates x among the centres of g with far-field anchors at the faces.
// `sample(i)` returns the stored value at centre i.
template <typename Sample>
double interpolate_1d(const Grid1D& g, double x, double left, double right,
                      Sample sample) {
  if (x <= g.x_min()) return left;
  if (x >= g.x_max()) return right;
  const std::size_t n = g.n_cells();
  const double s = center_coordinate(g, x);
  if (s < 0.0) {
    const double t = (x - g.x_min()) / (0.5 * g.h());
    return (1.0 - t) * left + t * sample(0);
  }
  if (s > static_cast<double>(n - 1)) {
    const double t = (x - g.center(n - 1)) / (0.5 * g.h());
    return (1.0 - t) * sample(n - 1) + t * right;
  }
  auto i = static_cast<std::size_t>(std::floor(s));
  if (i >= n - 1) i = n - 2;
  const double t = s - static_cast<double>(i);
  if (t == 0.0) return sample(i);
  return (1.0 - t) * sample(i) + t * sample(i + 1);
}

}  // namespace

Evaluator1D extend_front(const Field1D& field, double left_value,
                         double right_value) {
  return [field, left_value, right_value](double x) {
    return interpolate_1d(field.grid(), x, left_value, right_value,
                          [&](std::size_t i) { return field[i]; });
  };
}

Evaluator2D extend_strip(const Field2D& field, const Field1D& left_profile,
                         double right_value, double bottom_value,
                         double top_value) {
  if (!(left_profile.grid() == field.grid().gy())) {
    throw DimensionError("extend_strip: left profile is not on the field's y-grid");
  }
  return [field, left_profile, right_value, bottom_value,
          top_value](double x, double y) {
    const Grid2D& g = field.grid();
    const Grid1D& gy = g.gy();
    if (x <= g.gx().x_min()) {
      return interpolate_1d(gy, y, bottom_value, top_value,
                            [&](std::size_t j) { return left_profile[j]; });
    }
    if (x >= g.gx().x_max()) return right_value;
    // Interpolate in x along each needed row, then in y.
    auto row_value = [&](std::size_t j) {
      return interpolate_1d(g.gx(), x, left_profile[j], right_value,
                            [&](std::size_t i) { return field.at(i, j); });
    };
    return interpolate_1d(gy, y, bottom_value, top_value, row_value);
  };
}

void write_csv(std::ostream& os, const Field1D& field,
               const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "x,u\n";
  const Grid1D& g = field.grid();
  for (std::size_t i = 0; i < g.n_cells(); ++i) {
    os << format17(g.center(i)) << ',' << format17(field[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const Field2D& field,
               const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "x,y,u\n";
  const Grid2D& g = field.grid();
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const std::string y = format17(g.gy().center(j));
    for (std::size_t i = 0; i < g.nx(); ++i) {
      os << format17(g.gx().center(i)) << ',' << y << ','
         << format17(field.at(i, j)) << '\n';
    }
  }
}

Field1D read_csv_1d(std::istream& is) {
  std::string line;
  std::vector<double> xs;
  std::vector<double> us;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "x,u") throw ParameterError("read_csv_1d: expected header x,u");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    double x = 0.0;
    double u = 0.0;
    char comma = 0;
    if (!(row >> x >> comma >> u) || comma != ',') {
      throw ParameterError("read_csv_1d: malformed row: " + line);
    }
    xs.push_back(x);
    us.push_back(u);
  }
  if (xs.size() < 2) throw InsufficientDataError("read_csv_1d: fewer than 2 rows");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  Grid1D grid(xs.front() - 0.5 * h, xs.back() + 0.5 * h, xs.size());
  return Field1D(std::move(grid), std::move(us));
}

}  // namespace quench
