#include "heatlab/property_c.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "heatlab/error.hpp"
#include "heatlab/parallel.hpp"
#include "heatlab/sl_solver.hpp"

namespace heatlab {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

ProductDictionary build_product_dictionary(const ConductivityProfile& a1,
                                           const ConductivityProfile& a2,
                                           std::span<const double> lambdas, std::size_t points) {
  std::vector<double> sorted(lambdas.begin(), lambdas.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i] > 0.0)) throw InvalidInput("dictionary lambdas must be positive");
    if (i > 0 && sorted[i] == sorted[i - 1]) throw InvalidInput("dictionary lambdas must be distinct");
  }

  ProductDictionary dict;
  dict.lambdas.assign(lambdas.begin(), lambdas.end());
  dict.columns.resize(lambdas.size());
  dict.scales.resize(lambdas.size());
  SLOptions options;
  options.points = points;

  parallel_for(lambdas.size(), [&](std::size_t k) {
    const SLTrajectory v1 = solve_dirichlet_seed(a1, lambdas[k], options);
    const SLTrajectory v2 = solve_dirichlet_seed(a2, lambdas[k], options);
    std::vector<double> column(points);
    double scale = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      column[i] = v1.derivative[i] * v2.derivative[i];
      scale = std::max(scale, std::abs(column[i]));
    }
    for (double& c : column) c /= scale;
    dict.columns[k] = std::move(column);
    dict.scales[k] = scale;
  });
  dict.x.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    dict.x[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return dict;
}

ResidualCurve completeness_residual(const ProductDictionary& dict, std::span<const double> target,
                                    double rank_tolerance) {
  if (target.size() != dict.x.size()) {
    throw InvalidInput("target must be sampled on the dictionary grid");
  }
  const double dx = 1.0 / static_cast<double>(dict.x.size() - 1);
  const double weight = std::sqrt(dx);

  ResidualCurve curve;
  std::vector<double> r(target.begin(), target.end());
  curve.target_norm = weight * std::sqrt(dot(r, r));

  std::vector<std::vector<double>> basis;
  for (std::size_t k = 0; k < dict.size(); ++k) {
    std::vector<double> q = dict.columns[k];
    const double norm0 = std::sqrt(dot(q, q));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) axpy(-dot(e, q), e, q);
    }
    const double norm = std::sqrt(dot(q, q));
    if (norm <= rank_tolerance * norm0) {
      curve.dropped.push_back(k);
    } else {
      for (double& v : q) v /= norm;
      axpy(-dot(q, r), q, r);
      basis.push_back(std::move(q));
    }
    curve.residual.push_back(weight * std::sqrt(dot(r, r)));
  }
  return curve;
}

double simpson(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 3 || n % 2 == 0) throw InvalidInput("Simpson rule needs an odd number of points >= 3");
  const double h = 1.0 / static_cast<double>(n - 1);
  double sum = y.front() + y.back();
  for (std::size_t i = 1; i + 1 < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * y[i];
  return sum * h / 3.0;
}

double orthogonality_functional(const SampledFunction& p, const ConductivityProfile& a1,
                                const ConductivityProfile& a2, double lambda) {
  const std::size_t n = p.y.size();
  if (p.x.size() != n) throw InvalidInput("difference profile: x and y lengths differ");
  SLOptions options;
  options.points = n;
  const SLTrajectory psi = solve_dirichlet_seed(a1, lambda, options);
  const SLTrajectory v2 = solve_dirichlet_seed(a2, lambda, options);
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(p.x[i] - psi.x[i]) > 1e-12) {
      throw InvalidInput("difference profile must be sampled on a uniform grid over [0, 1]");
    }
    integrand[i] = p.y[i] * v2.derivative[i] * psi.derivative[i];
  }
  return simpson(integrand);
}

}  // namespace heatlab
