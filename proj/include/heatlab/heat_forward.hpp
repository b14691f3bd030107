#pragma once

#include <span>
#include <vector>

#include "heatlab/drive.hpp"
#include "heatlab/grid.hpp"
#include "heatlab/profile.hpp"

namespace heatlab {

/// u(x, t) on the grid nodes, row k = time t_k, column i = node x_i.
class TemperatureField {
 public:
  explicit TemperatureField(SpaceTimeGrid grid)
      : grid_(grid), u_((grid.nt() + 1) * grid.nx(), 0.0) {}

  const SpaceTimeGrid& grid() const { return grid_; }
  double operator()(std::size_t k, std::size_t i) const { return u_[k * grid_.nx() + i]; }
  double& operator()(std::size_t k, std::size_t i) { return u_[k * grid_.nx() + i]; }
  std::span<const double> row(std::size_t k) const {
    return {u_.data() + k * grid_.nx(), grid_.nx()};
  }
  std::span<double> row(std::size_t k) { return {u_.data() + k * grid_.nx(), grid_.nx()}; }

 private:
  SpaceTimeGrid grid_;
  std::vector<double> u_;
};

struct ForwardOptions {
  // Implicit-Euler substeps (each dt / startup_substeps) replacing the first
  // Crank-Nicolson step. They damp the high-frequency content a step drive
  // injects at the corner (x, t) = (1, 0); with plain Crank-Nicolson (0) that
  // content decays like (-1)^k and spoils the flux at coarse dt / dx^2.
  int startup_substeps = 4;
};

/**
 * Solves u_t = (a u_x)_x on [0, 1], u(x, 0) = 0, u(0, t) = 0, u(1, t) = f(t).
 *
 * Conservative second-order differences with face conductivities
 * a((x_i + x_{i+1}) / 2) and Crank-Nicolson in time; one tridiagonal solve
 * per step. Row 0 holds the initial condition, so for a drive with f(0) != 0
 * the corner value u(1, 0) is 0 and f enters from t_1 on.
 */
TemperatureField solve_forward(const ConductivityProfile& a, const BoundaryDrive& f,
                               const SpaceTimeGrid& grid, const ForwardOptions& options = {});

/// g(t_k) = a(1) u_x(1, t_k), second-order one-sided difference.
TimeSeries flux_right(const TemperatureField& field, const ConductivityProfile& a);

/// h(t_k) = a(0) u_x(0, t_k), second-order one-sided difference.
TimeSeries flux_left(const TemperatureField& field, const ConductivityProfile& a);

/// Solves the tridiagonal system in place (Thomas algorithm). `lower[0]` and
/// `upper[n-1]` are ignored. `rhs` receives the solution.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

}  // namespace heatlab
