#pragma once

#include <memory>
#include <span>
#include <vector>

#include "quench/grid.hpp"

namespace quench {

// Dirichlet data on the two faces of a 1D grid.
struct FaceData1D {
  double left = 0.0;
  double right = 0.0;
};

// Dirichlet data on the four faces of a 2D grid: `left`/`right` are sampled
// at the y-centres (size ny), `bottom`/`top` at the x-centres (size nx).
// bottom is the y_min face.
struct FaceData2D {
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> bottom;
  std::vector<double> top;

  static FaceData2D zeros(const Grid2D& grid);
  void check(const Grid2D& grid) const;
};

// Interior row of -D2 - c D1 + shift with centred differences.
struct Stencil {
  double lower;
  double diag;
  double upper;
};

// Throws ParameterError unless c h / 2 < 1, i.e. unless the centred
// convection stencil keeps non-positive off-diagonals.
Stencil convection_diffusion_stencil(double h, double c, double shift);

/**
 * The operator A = -D2 - c D1 + shift on a cell-centred grid with Dirichlet
 * faces. Faces enter through the linear ghost value u_ghost = 2 g - u_edge,
 * so A u = f + B(g) where B collects the face contributions.
 *
 * The tridiagonal factorisation is computed once in the constructor; the
 * matrix is strictly diagonally dominant for shift > 0, so no pivoting.
 */
class ConvectionDiffusion1D {
 public:
  ConvectionDiffusion1D(const Grid1D& grid, double c, double shift);

  // Overwrites `rhs` (holding f) with the solution u of A u = f + B(g).
  void solve(std::span<double> rhs, FaceData1D g) const;

  // out = A u - B(g).
  void apply(std::span<const double> u, FaceData1D g, std::span<double> out) const;

  const Grid1D& grid() const { return grid_; }
  const Stencil& stencil() const { return st_; }
  double c() const { return c_; }
  double shift() const { return shift_; }

 private:
  Grid1D grid_;
  double c_;
  double shift_;
  Stencil st_;
  std::vector<double> inv_pivot_;
  std::vector<double> upper_ratio_;
};

/**
 * A = -Dxx - Dyy - c Dx + shift on a Grid2D, solved directly: a discrete
 * sine transform (DST-II) diagonalises the y-part exactly, leaving one
 * tridiagonal system in x per sine mode. Factorised once per geometry.
 *
 * Not safe to share across threads: solve() uses an internal work buffer.
 */
class SeparableOperator2D {
 public:
  SeparableOperator2D(const Grid2D& grid, double c, double shift);
  ~SeparableOperator2D();
  SeparableOperator2D(const SeparableOperator2D&) = delete;
  SeparableOperator2D& operator=(const SeparableOperator2D&) = delete;
  SeparableOperator2D(SeparableOperator2D&&) noexcept;
  SeparableOperator2D& operator=(SeparableOperator2D&&) noexcept;

  void solve(std::span<double> rhs, const FaceData2D& g);
  void apply(std::span<const double> u, const FaceData2D& g,
             std::span<double> out) const;

  const Grid2D& grid() const;
  double c() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace quench
