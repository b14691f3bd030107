#include "heatlab/heat_forward.hpp"

#include <cmath>

#include "heatlab/error.hpp"

namespace heatlab {

namespace {

// LU factors of a constant tridiagonal matrix, reused for every time step.
class TridiagonalFactor {
 public:
  TridiagonalFactor(std::span<const double> lower, std::span<const double> diag,
                    std::span<const double> upper)
      : lower_(lower.begin(), lower.end()), upper_(diag.size()), pivot_(diag.size()) {
    const std::size_t n = diag.size();
    pivot_[0] = diag[0];
    upper_[0] = upper[0] / pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
      pivot_[i] = diag[i] - lower[i] * upper_[i - 1];
      upper_[i] = (i + 1 < n) ? upper[i] / pivot_[i] : 0.0;
    }
  }

  void solve(std::span<double> rhs) const {
    const std::size_t n = rhs.size();
    rhs[0] /= pivot_[0];
    for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) / pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= upper_[i] * rhs[i + 1];
  }

 private:
  std::vector<double> lower_, upper_, pivot_;
};

// One theta-scheme step operator for the interior unknowns 1..nx-2.
class StepOperator {
 public:
  StepOperator(const std::vector<double>& faces, double dx, double tau, double theta)
      : faces_(faces), k_(tau / (dx * dx)), theta_(theta), factor_(build(faces, k_, theta)) {}

  // Advances a full row (boundary nodes included); the explicit half reads the
  // old boundary value from u_old, the implicit half uses f_new.
  void advance(std::span<const double> u_old, std::span<double> u_new, double f_new,
               std::vector<double>& work) const {
    const std::size_t n = u_old.size();
    const std::size_t m = n - 2;
    const double explicit_w = (1.0 - theta_) * k_;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t i = j + 1;
      const double flux_r = faces_[i] * (u_old[i + 1] - u_old[i]);
      const double flux_l = faces_[i - 1] * (u_old[i] - u_old[i - 1]);
      work[j] = u_old[i] + explicit_w * (flux_r - flux_l);
    }
    // Implicit part of the Dirichlet value at x = 1 moves to the right side.
    work[m - 1] += theta_ * k_ * faces_[n - 2] * f_new;
    factor_.solve(std::span<double>(work.data(), m));
    u_new[0] = 0.0;
    for (std::size_t j = 0; j < m; ++j) u_new[j + 1] = work[j];
    u_new[n - 1] = f_new;
  }

 private:
  static TridiagonalFactor build(const std::vector<double>& faces, double k, double theta) {
    const std::size_t m = faces.size() - 1;
    std::vector<double> lower(m), diag(m), upper(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double al = faces[j];
      const double ar = faces[j + 1];
      lower[j] = -theta * k * al;
      diag[j] = 1.0 + theta * k * (al + ar);
      upper[j] = -theta * k * ar;
    }
    return {lower, diag, upper};
  }

  const std::vector<double>& faces_;
  double k_;
  double theta_;
  TridiagonalFactor factor_;
};

}  // namespace

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  if (diag.empty()) return;
  TridiagonalFactor(lower, diag, upper).solve(rhs);
}

TemperatureField solve_forward(const ConductivityProfile& a, const BoundaryDrive& f,
                               const SpaceTimeGrid& grid, const ForwardOptions& options) {
  const std::size_t nx = grid.nx();
  const std::size_t nt = grid.nt();
  const double dx = grid.dx();
  const double dt = grid.dt();

  std::vector<double> drive(nt + 1);
  for (std::size_t k = 0; k <= nt; ++k) {
    drive[k] = f(grid.t(k));
    if (!std::isfinite(drive[k])) {
      throw InvalidInput("drive is not finite at t=" + std::to_string(grid.t(k)));
    }
  }

  std::vector<double> faces(nx - 1);
  for (std::size_t i = 0; i + 1 < nx; ++i) faces[i] = a(0.5 * (grid.x(i) + grid.x(i + 1)));

  TemperatureField field(grid);
  std::vector<double> work(nx - 2);
  const StepOperator crank_nicolson(faces, dx, dt, 0.5);

  std::size_t first = 0;
  if (options.startup_substeps > 0) {
    const int substeps = options.startup_substeps;
    const double tau = dt / substeps;
    const StepOperator euler(faces, dx, tau, 1.0);
    std::vector<double> current(nx, 0.0), next(nx, 0.0);
    for (int s = 1; s <= substeps; ++s) {
      const double t_new = s * tau;
      const double f_new = (s == substeps) ? drive[1] : f(t_new);
      euler.advance(current, next, f_new, work);
      std::swap(current, next);
    }
    auto row1 = field.row(1);
    std::copy(current.begin(), current.end(), row1.begin());
    first = 1;
  }

  for (std::size_t k = first; k < nt; ++k) {
    // Row 0 carries u(1, 0) = 0 from the initial condition.
    crank_nicolson.advance(field.row(k), field.row(k + 1), drive[k + 1], work);
  }
  return field;
}

namespace {

TimeSeries boundary_flux(const TemperatureField& field, double conductivity, bool right) {
  const SpaceTimeGrid& grid = field.grid();
  const std::size_t n = grid.nx();
  const double dx = grid.dx();
  TimeSeries out;
  out.t = grid.times();
  out.y.resize(grid.nt() + 1);
  for (std::size_t k = 0; k <= grid.nt(); ++k) {
    const auto u = field.row(k);
    const double slope = right ? (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dx)
                               : (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
    out.y[k] = conductivity * slope;
  }
  return out;
}

}  // namespace

TimeSeries flux_right(const TemperatureField& field, const ConductivityProfile& a) {
  return boundary_flux(field, a(1.0), true);
}

TimeSeries flux_left(const TemperatureField& field, const ConductivityProfile& a) {
  return boundary_flux(field, a(0.0), false);
}

}  // namespace heatlab
