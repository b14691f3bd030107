#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heatlab/drive.hpp"
#include "heatlab/grid.hpp"
#include "heatlab/heat_forward.hpp"
#include "heatlab/laplace.hpp"
#include "heatlab/profile.hpp"

namespace heatlab {

/// Which boundary flux is observed.
enum class FluxEnd {
  right,  // g(t) = a(1) u_x(1, t), where the temperature is driven
  left,   // h(t) = a(0) u_x(0, t), where the temperature is held at zero
};

struct ReconstructionConfig {
  std::size_t m = 9;       // piecewise-linear nodes, uniform on [0, 1]
  double alpha = 0.0;      // weight on the squared second differences of node values
  std::size_t max_iters = 40;
  double misfit_tol = 1e-20;
  FluxEnd data_end = FluxEnd::right;
  ConductivityProfile init = ConductivityProfile::constant(1.5);
  double fd_step = 1e-5;   // central-difference step in log space
  ForwardOptions forward;

  /// Throws InvalidInput unless m >= 3, alpha >= 0, misfit_tol > 0.
  void validate() const;
};

struct ReconstructionResult {
  ConductivityProfile profile = ConductivityProfile::constant(1.0);
  std::vector<double> log_nodes;
  std::vector<double> misfit_history;  // one entry per accepted iterate
  bool converged = false;
  double final_misfit = 0.0;
  std::size_t iterations = 0;
  std::string stop_reason;
};

/// Piecewise-linear profile through exp(log_nodes).
ConductivityProfile profile_from_log_nodes(std::span<const double> log_nodes);
/// log a at m uniform nodes.
std::vector<double> log_nodes_of(const ConductivityProfile& a, std::size_t m);

/// The flux observed at `end` for profile a.
TimeSeries observe_flux(const ConductivityProfile& a, const BoundaryDrive& f,
                        const SpaceTimeGrid& grid, FluxEnd end, const ForwardOptions& options = {});

/**
 * sum_k (flux_model(t_k) - data(t_k))^2 dt + alpha * sum_j (a_{j-1} - 2 a_j + a_{j+1})^2
 * for the profile through exp(log_nodes). `data` must be sampled on the grid times.
 */
double misfit(std::span<const double> log_nodes, const TimeSeries& data, const BoundaryDrive& f,
              const SpaceTimeGrid& grid, const ReconstructionConfig& cfg);

/**
 * Gauss-Newton on the log node values with a central-difference Jacobian and
 * backtracking line search. Stops on misfit_tol, stagnation (relative
 * decrease below 1e-10 or a vanishing gradient), or max_iters. A failed line
 * search returns the best iterate with converged = false.
 */
ReconstructionResult reconstruct(const TimeSeries& data, const BoundaryDrive& f,
                                 const SpaceTimeGrid& grid, const ReconstructionConfig& cfg);

/// Adds independent uniform noise in [-level, level] * max|y| (seeded, reproducible).
TimeSeries add_uniform_noise(const TimeSeries& data, double level, std::uint64_t seed);

/// sum_k (flux_grid(t_k) - flux_refined(t_k))^2 dt: how far the grid's own
/// flux sits from the one on the 2x refined grid, in misfit units.
double discretization_floor(const ConductivityProfile& a, const BoundaryDrive& f,
                            const SpaceTimeGrid& grid, FluxEnd end,
                            const ForwardOptions& options = {});

/// Relative discrete L2 distance between two profiles on a dense grid.
double relative_l2_error(const ConductivityProfile& estimate, const ConductivityProfile& truth);

/// Left-flux comparison of a and its reflection.
struct AmbiguityReport {
  bool vacuous = false;               // a is (numerically) symmetric
  double asymmetry = 0.0;             // max |a(x) - a(1 - x)|
  double max_left_flux_difference = 0.0;   // max_t |h_a - h_reflected|
  double max_H_relative_difference = 0.0;  // max_lambda |H_a - H_reflected| / |H_a|
  double max_right_flux_difference = 0.0;  // max_t |g_a - g_reflected|
  SpectralSample H_original;
  SpectralSample H_reflected;
};

inline constexpr double kSymmetryThreshold = 1e-10;

AmbiguityReport ambiguity_experiment(const ConductivityProfile& a, const BoundaryDrive& f,
                                     const SpaceTimeGrid& grid,
                                     std::span<const double> lambdas,
                                     const ForwardOptions& options = {});

/// Laplace transform of the drive: closed form when available, otherwise the
/// transform of its samples on the grid times with a constant tail.
SpectralSample drive_transform(const BoundaryDrive& f, std::span<const double> lambdas,
                               const SpaceTimeGrid& grid);

}  // namespace heatlab
