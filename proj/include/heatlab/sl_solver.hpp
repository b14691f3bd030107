#pragma once

#include <vector>

#include "heatlab/profile.hpp"

namespace heatlab {

struct SLOptions {
  std::size_t points = 257;  // uniform output grid on [0, 1]
  double tolerance = 1e-12;  // absolute and relative local error target
};

/**
 * One solution of a Laplace-domain ODE sampled on a uniform x-grid.
 *
 * `value` is the primary function (v, w or theta). `derivative` is its
 * x-derivative. `conjugate` is a * v' for the v-equation and equals
 * `derivative` for the w/theta-equation.
 */
struct SLTrajectory {
  double lambda = 0.0;
  std::vector<double> x;
  std::vector<double> value;
  std::vector<double> derivative;
  std::vector<double> conjugate;
};

/// Largest lambda accepted for a: sqrt(lambda) * xi(1) <= 600.
double lambda_limit(const ConductivityProfile& a);

/// (a v')' = lambda v with v(0) = 0, (a v')(0) = 1. Integrates v' = m / a,
/// m' = lambda v. Throws InvalidInput above lambda_limit(a).
SLTrajectory solve_dirichlet_seed(const ConductivityProfile& a, double lambda,
                                  const SLOptions& options = {});

/// w'' = lambda w / a with w(0) = 1, w'(0) = 0.
SLTrajectory solve_w(const ConductivityProfile& a, double lambda, const SLOptions& options = {});

/// w'' = lambda w / a from arbitrary initial data w(0) = w0, w'(0) = dw0.
SLTrajectory solve_w_ivp(const ConductivityProfile& a, double lambda, double w0, double dw0,
                         const SLOptions& options = {});

struct ThetaEndpoint {
  double theta1;   // theta(1, lambda)
  double dtheta1;  // theta'(1, lambda)
};

/// Endpoint values of the Neumann seed theta'' = lambda theta / a,
/// theta(0) = 1, theta'(0) = 0.
ThetaEndpoint theta(const ConductivityProfile& a, double lambda, double tolerance = 1e-12);

struct ResidualReport {
  double residual = 0.0;   // max-norm discrepancy between the two routes
  double reference = 0.0;  // max-norm of the reference solution
};

/// Builds v(x) = int_0^x w / a from solve_w and compares it with
/// solve_dirichlet_seed scaled to the same a(0) v'(0).
ResidualReport verify_lemma_der(const ConductivityProfile& a, double lambda,
                                const SLOptions& options = {});

/// Which potential to use in the Schrodinger form.
enum class PotentialFormula {
  derived,  // q = 3/16 a^{-1} a'^2 - a''/4, what the substitution produces
  printed,  // q = 3/16 a^{-1/2} a'^2 - a''/4, kept to show that it fails
};

/// Liouville potential q at the point xi(x).
double liouville_potential(const ConductivityProfile& a, double x,
                           PotentialFormula formula = PotentialFormula::derived);

/// Liouville change of variables xi(x) = int_0^x a^{-1/2}, w = a^{1/4} z(xi).
struct LiouvilleData {
  std::vector<double> x;
  std::vector<double> xi;  // xi(x) on the x-grid
  double length = 0.0;     // xi(1)
  std::vector<double> q;   // q(xi(x)) on the same grid
  double h = 0.0;          // a^{-1/2}(0) a'(0) / 4, third-kind boundary coefficient
};

LiouvilleData liouville_map(const ConductivityProfile& a, std::size_t points = 257,
                            PotentialFormula formula = PotentialFormula::derived);

struct LiouvilleReport {
  double residual = 0.0;      // max |a^{1/4} z(xi(x)) - w(x)|
  double reference = 0.0;     // max |w|
  double map_residual = 0.0;  // max |x(xi(x_i)) - x_i| along the transformed solve
};

/// Solves z'' = (q + lambda) z on [0, xi(1)] with z(0) = a^{-1/4}(0) w(0),
/// z'(0) = -h z(0), maps back through w = a^{1/4} z and compares with solve_w.
/// The inverse map x(xi) is integrated alongside, dx/dxi = a^{1/2}.
LiouvilleReport verify_liouville(const ConductivityProfile& a, double lambda,
                                 PotentialFormula formula = PotentialFormula::derived,
                                 const SLOptions& options = {});

}  // namespace heatlab
