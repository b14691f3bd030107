#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatlab/profile.hpp"

namespace heatlab {

/**
 * Products x -> v1'(x, lambda_k) v2'(x, lambda_k) of Dirichlet-seed
 * derivatives for two profiles, one column per lambda, each scaled to unit
 * max-norm (the raw columns grow like exp(2 sqrt(lambda) xi(1))).
 */
struct ProductDictionary {
  std::vector<double> lambdas;
  std::vector<double> x;
  std::vector<std::vector<double>> columns;
  std::vector<double> scales;  // max-norm of each raw column

  std::size_t size() const { return columns.size(); }
};

/// lambdas must be distinct and positive. `points` is the shared x-grid size.
ProductDictionary build_product_dictionary(const ConductivityProfile& a1,
                                           const ConductivityProfile& a2,
                                           std::span<const double> lambdas,
                                           std::size_t points = 2049);

/**
 * Least-squares distance from a target to the span of the first N columns,
 * for N = 1..size(), in the discrete L2 norm sqrt(dx * sum y_i^2).
 *
 * The discrete L2 residual stands in for L1 density: it is what can be
 * computed on a fixed grid, and its decay is the numerical evidence.
 */
struct ResidualCurve {
  std::vector<double> residual;      // residual[N-1] for the first N columns
  std::vector<std::size_t> dropped;  // columns rejected as numerically dependent
  double target_norm = 0.0;
};

/// Columns are orthogonalized in order (modified Gram-Schmidt, two passes).
/// A column whose new direction is below rank_tolerance times its own norm is
/// dropped and reported; the residual is then carried over unchanged.
ResidualCurve completeness_residual(const ProductDictionary& dict, std::span<const double> target,
                                    double rank_tolerance = 1e-10);

/// J(lambda) = int_0^1 p v2' psi' dx, where psi is the Dirichlet seed for a1
/// and v2 the one for a2, evaluated by composite Simpson on p's grid (which
/// must be uniform on [0, 1] with an odd number of points).
double orthogonality_functional(const SampledFunction& p, const ConductivityProfile& a1,
                                const ConductivityProfile& a2, double lambda);

/// Composite Simpson on a uniform grid over [0, 1]; size must be odd and >= 3.
double simpson(std::span<const double> y);

}  // namespace heatlab
