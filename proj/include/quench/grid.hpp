#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace quench {

struct Interval {
  double lo;
  double hi;

  bool contains(double x) const { return x >= lo && x <= hi; }
};

/**
 * Uniform cell-centred grid on [x_min, x_max].
 *
 * Unknowns live at cell centres x_i = x_min + (i + 1/2) h, so the domain
 * ends are cell interfaces and Dirichlet data is imposed on faces. When the
 * grid is built with `aligned`, x = 0 is an interface too and the quench
 * coefficient mu is constant on every cell.
 */
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t n_cells);

  // Smallest cell count with spacing <= h_max for which x_min, x_max and
  // (if inside the domain) 0 are all cell interfaces.
  static Grid1D aligned(double x_min, double x_max, double h_max);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t n_cells() const { return n_; }
  double h() const { return h_; }
  double length() const { return x_max_ - x_min_; }

  double center(std::size_t i) const {
    return x_min_ + (static_cast<double>(i) + 0.5) * h_;
  }
  std::vector<double> centers() const;

  // Indices of the cell centres that fall inside `window`.
  std::vector<std::size_t> indices_in(Interval window) const;

  // Same spacing and the node sets coincide where they overlap.
  bool nodes_aligned_with(const Grid1D& other, double tol = 1e-9) const;

  bool operator==(const Grid1D& other) const;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  double h_;
};

/// Tensor grid; field values are stored row-major with y as the row index:
/// values[j * nx + i] is the sample at (x_i, y_j).
class Grid2D {
 public:
  Grid2D(Grid1D gx, Grid1D gy) : gx_(std::move(gx)), gy_(std::move(gy)) {}

  const Grid1D& gx() const { return gx_; }
  const Grid1D& gy() const { return gy_; }
  std::size_t nx() const { return gx_.n_cells(); }
  std::size_t ny() const { return gy_.n_cells(); }
  std::size_t size() const { return nx() * ny(); }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx() + i; }

  bool operator==(const Grid2D& other) const {
    return gx_ == other.gx_ && gy_ == other.gy_;
  }

 private:
  Grid1D gx_;
  Grid1D gy_;
};

class Field1D {
 public:
  Field1D(Grid1D grid, std::vector<double> values);
  static Field1D constant(Grid1D grid, double value);
  static Field1D sample(Grid1D grid, const std::function<double(double)>& f);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double max() const;
  double min() const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

class Field2D {
 public:
  Field2D(Grid2D grid, std::vector<double> values);
  static Field2D constant(Grid2D grid, double value);
  static Field2D sample(Grid2D grid,
                        const std::function<double(double, double)>& f);

  const Grid2D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double at(std::size_t i, std::size_t j) const {
    return values_[grid_.index(i, j)];
  }
  std::size_t size() const { return values_.size(); }

  // Column x = x_i as a field over gy, and row y = y_j as a field over gx.
  Field1D slice_at_x(std::size_t i) const;
  Field1D slice_at_y(std::size_t j) const;

  double max() const;
  double min() const;

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

// Quench coefficient: +1 in the wake (x < 0), -1 ahead (x > 0). mu(0) = -1
// is an arbitrary convention; solvers never sample it.
double mu_at(double x);

using Evaluator1D = std::function<double(double)>;
using Evaluator2D = std::function<double(double, double)>;

// Piecewise-linear evaluator of a truncated solution prolonged by its
// far-field values: `left_value` for x <= x_min, `right_value` for x >= x_max.
// Between the domain end and the first centre the evaluator interpolates to
// the far-field value, so it is continuous everywhere.
Evaluator1D extend_front(const Field1D& field, double left_value,
                         double right_value);

// Strip analogue: `left_profile(y)` for x <= x_min, `right_value` for
// x >= x_max, bilinear inside. `bottom_value` and `top_value` are the
// Dirichlet values on the y faces used in the half cells next to them.
Evaluator2D extend_strip(const Field2D& field, const Field1D& left_profile,
                         double right_value, double bottom_value = 0.0,
                         double top_value = 0.0);

// CSV with header `x,u` (or `x,y,u`), one row per cell centre, 17
// significant digits. `comment`, when non-empty, is written first as a
// `# ...` line.
void write_csv(std::ostream& os, const Field1D& field,
               const std::string& comment = {});
void write_csv(std::ostream& os, const Field2D& field,
               const std::string& comment = {});

// Reads back a 1D CSV written by write_csv. The grid is reconstructed from
// the centres, so it must be uniform.
Field1D read_csv_1d(std::istream& is);

}  // namespace quench
