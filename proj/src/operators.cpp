#include "quench/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "quench/errors.hpp"

namespace quench {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Thomas factorisation for a tridiagonal matrix with constant off-diagonals
// and a per-row diagonal.
void factor_tridiagonal(double lower, double upper, std::span<const double> diag,
                        std::span<double> inv_pivot, std::span<double> upper_ratio) {
  const std::size_t n = diag.size();
  double pivot = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = diag[i] - lower * upper_ratio[i - 1];
    if (!(std::abs(pivot) > 0.0)) throw SolverError("tridiagonal factorisation: zero pivot");
    inv_pivot[i] = 1.0 / pivot;
    upper_ratio[i] = upper * inv_pivot[i];
  }
}

void solve_tridiagonal(double lower, std::span<const double> inv_pivot,
                       std::span<const double> upper_ratio, double* x) {
  const std::size_t n = inv_pivot.size();
  x[0] *= inv_pivot[0];
  for (std::size_t i = 1; i < n; ++i) x[i] = (x[i] - lower * x[i - 1]) * inv_pivot[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper_ratio[i] * x[i + 1];
}

std::vector<double> boundary_diagonal(std::size_t n, const Stencil& st) {
  std::vector<double> d(n, st.diag);
  d.front() -= st.lower;
  d.back() -= st.upper;
  return d;
}

}  // namespace

FaceData2D FaceData2D::zeros(const Grid2D& grid) {
  return {std::vector<double>(grid.ny(), 0.0), std::vector<double>(grid.ny(), 0.0),
          std::vector<double>(grid.nx(), 0.0), std::vector<double>(grid.nx(), 0.0)};
}

void FaceData2D::check(const Grid2D& grid) const {
  if (left.size() != grid.ny() || right.size() != grid.ny() ||
      bottom.size() != grid.nx() || top.size() != grid.nx()) {
    throw DimensionError("FaceData2D: face sizes do not match the grid");
  }
}

Stencil convection_diffusion_stencil(double h, double c, double shift) {
  if (!(c * h / 2.0 < 1.0)) {
    throw ParameterError("grid Peclet number c*h/2 = " + std::to_string(c * h / 2.0) +
                         " must be < 1 for the discrete comparison principle");
  }
  const double ih2 = 1.0 / (h * h);
  Stencil st{-ih2 + c / (2.0 * h), 2.0 * ih2 + shift, -ih2 - c / (2.0 * h)};
  // M-matrix guard: the checks below cannot fail once c h / 2 < 1 and
  // shift > 0, but they are what the comparison arguments rely on.
  if (st.lower > 0.0 || st.upper > 0.0) throw ParameterError("stencil is not an M-matrix");
  if (!(shift > 0.0)) throw ParameterError("operator shift must be positive");
  return st;
}

ConvectionDiffusion1D::ConvectionDiffusion1D(const Grid1D& grid, double c, double shift)
    : grid_(grid),
      c_(c),
      shift_(shift),
      st_(convection_diffusion_stencil(grid.h(), c, shift)),
      inv_pivot_(grid.n_cells()),
      upper_ratio_(grid.n_cells()) {
  const auto diag = boundary_diagonal(grid.n_cells(), st_);
  factor_tridiagonal(st_.lower, st_.upper, diag, inv_pivot_, upper_ratio_);
}

void ConvectionDiffusion1D::solve(std::span<double> rhs, FaceData1D g) const {
  if (rhs.size() != grid_.n_cells()) throw DimensionError("ConvectionDiffusion1D::solve");
  rhs.front() += -2.0 * st_.lower * g.left;
  rhs.back() += -2.0 * st_.upper * g.right;
  solve_tridiagonal(st_.lower, inv_pivot_, upper_ratio_, rhs.data());
}

void ConvectionDiffusion1D::apply(std::span<const double> u, FaceData1D g,
                                  std::span<double> out) const {
  const std::size_t n = grid_.n_cells();
  if (u.size() != n || out.size() != n) throw DimensionError("ConvectionDiffusion1D::apply");
  for (std::size_t i = 0; i < n; ++i) {
    const double ul = i > 0 ? u[i - 1] : 2.0 * g.left - u[0];
    const double ur = i + 1 < n ? u[i + 1] : 2.0 * g.right - u[n - 1];
    out[i] = st_.lower * ul + st_.diag * u[i] + st_.upper * ur;
  }
}

struct SeparableOperator2D::Impl {
  Grid2D grid;
  double c;
  Stencil sx;
  double iy2;
  // Per sine mode k: Thomas factors of the x-system, stored contiguously.
  std::vector<double> inv_pivot;
  std::vector<double> upper_ratio;
  double* work = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Impl(const Grid2D& g, double c_, double shift)
      : grid(g), c(c_), sx(convection_diffusion_stencil(g.gx().h(), c_, shift)) {
    const double hy = g.gy().h();
    iy2 = 1.0 / (hy * hy);
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    inv_pivot.resize(nx * ny);
    upper_ratio.resize(nx * ny);
    const auto base = boundary_diagonal(nx, sx);
    std::vector<double> diag(nx);
    for (std::size_t k = 0; k < ny; ++k) {
      const double s = std::sin(std::numbers::pi * static_cast<double>(k + 1) /
                                (2.0 * static_cast<double>(ny)));
      const double lambda = 4.0 * s * s * iy2;
      for (std::size_t i = 0; i < nx; ++i) diag[i] = base[i] + lambda;
      factor_tridiagonal(sx.lower, sx.upper, diag,
                         std::span<double>(inv_pivot).subspan(k * nx, nx),
                         std::span<double>(upper_ratio).subspan(k * nx, nx));
    }
    std::lock_guard lock(fftw_planner_mutex());
    work = static_cast<double*>(fftw_malloc(sizeof(double) * nx * ny));
    if (work == nullptr) throw SolverError("SeparableOperator2D: allocation failed");
    const int n = static_cast<int>(ny);
    const int howmany = static_cast<int>(nx);
    const int stride = static_cast<int>(nx);
    const fftw_r2r_kind fwd = FFTW_RODFT10;
    const fftw_r2r_kind bwd = FFTW_RODFT01;
    forward = fftw_plan_many_r2r(1, &n, howmany, work, nullptr, stride, 1, work,
                                 nullptr, stride, 1, &fwd, FFTW_ESTIMATE);
    backward = fftw_plan_many_r2r(1, &n, howmany, work, nullptr, stride, 1, work,
                                  nullptr, stride, 1, &bwd, FFTW_ESTIMATE);
    if (forward == nullptr || backward == nullptr) {
      throw SolverError("SeparableOperator2D: FFTW planning failed");
    }
  }

  ~Impl() {
    std::lock_guard lock(fftw_planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
    if (work != nullptr) fftw_free(work);
  }
};

SeparableOperator2D::SeparableOperator2D(const Grid2D& grid, double c, double shift)
    : impl_(std::make_unique<Impl>(grid, c, shift)) {}
SeparableOperator2D::~SeparableOperator2D() = default;
SeparableOperator2D::SeparableOperator2D(SeparableOperator2D&&) noexcept = default;
SeparableOperator2D& SeparableOperator2D::operator=(SeparableOperator2D&&) noexcept = default;

const Grid2D& SeparableOperator2D::grid() const { return impl_->grid; }
double SeparableOperator2D::c() const { return impl_->c; }

void SeparableOperator2D::solve(std::span<double> rhs, const FaceData2D& g) {
  Impl& m = *impl_;
  const std::size_t nx = m.grid.nx();
  const std::size_t ny = m.grid.ny();
  if (rhs.size() != nx * ny) throw DimensionError("SeparableOperator2D::solve");
  g.check(m.grid);
  double* w = m.work;
  std::copy(rhs.begin(), rhs.end(), w);
  for (std::size_t j = 0; j < ny; ++j) {
    w[j * nx] += -2.0 * m.sx.lower * g.left[j];
    w[j * nx + nx - 1] += -2.0 * m.sx.upper * g.right[j];
  }
  for (std::size_t i = 0; i < nx; ++i) {
    w[i] += 2.0 * m.iy2 * g.bottom[i];
    w[(ny - 1) * nx + i] += 2.0 * m.iy2 * g.top[i];
  }
  fftw_execute(m.forward);
  for (std::size_t k = 0; k < ny; ++k) {
    solve_tridiagonal(m.sx.lower, std::span<const double>(m.inv_pivot).subspan(k * nx, nx),
                      std::span<const double>(m.upper_ratio).subspan(k * nx, nx),
                      w + k * nx);
  }
  fftw_execute(m.backward);
  const double scale = 1.0 / (2.0 * static_cast<double>(ny));
  for (std::size_t p = 0; p < nx * ny; ++p) rhs[p] = w[p] * scale;
}

void SeparableOperator2D::apply(std::span<const double> u, const FaceData2D& g,
                                std::span<double> out) const {
  const Impl& m = *impl_;
  const std::size_t nx = m.grid.nx();
  const std::size_t ny = m.grid.ny();
  if (u.size() != nx * ny || out.size() != nx * ny) {
    throw DimensionError("SeparableOperator2D::apply");
  }
  g.check(m.grid);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t p = j * nx + i;
      const double ul = i > 0 ? u[p - 1] : 2.0 * g.left[j] - u[p];
      const double ur = i + 1 < nx ? u[p + 1] : 2.0 * g.right[j] - u[p];
      const double ud = j > 0 ? u[p - nx] : 2.0 * g.bottom[i] - u[p];
      const double uu = j + 1 < ny ? u[p + nx] : 2.0 * g.top[i] - u[p];
      out[p] = m.sx.lower * ul + m.sx.diag * u[p] + m.sx.upper * ur +
               m.iy2 * (2.0 * u[p] - ud - uu);
    }
  }
}

}  // namespace quench
