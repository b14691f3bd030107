#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatlab/grid.hpp"

namespace heatlab {

/// Which lambda-domain quantity a SpectralSample holds.
enum class SpectralTag { F, G, H, theta1, dtheta1 };

std::string to_string(SpectralTag tag);

/// Real lambda-indexed values, lambda strictly increasing and positive.
struct SpectralSample {
  std::vector<double> lambdas;
  std::vector<double> values;
  SpectralTag tag = SpectralTag::F;
  // Set when lambda_min * T < 5: the truncated tail may not be negligible.
  bool truncation_warning = false;

  void validate() const;
};

/// How the series is continued past its last sample.
enum class TailModel {
  zero,      // y = 0 for t > T
  constant,  // y = y(T) for t > T, adding y(T) exp(-lambda T) / lambda
};

/**
 * Laplace transform of a sampled series at each lambda.
 *
 * The linear interpolant of the samples is integrated exactly against
 * exp(-lambda t) segment by segment, so piecewise-linear data (steps, ramps)
 * are transformed without quadrature error. Throws InvalidInput for lambda <= 0.
 */
SpectralSample laplace_transform(const TimeSeries& series, std::span<const double> lambdas,
                                 TailModel tail, SpectralTag tag = SpectralTag::F);

/// `count` logarithmically spaced points in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

/// The default experiment grid: 40 log-spaced values in [0.25, 25].
std::vector<double> default_lambda_grid();

}  // namespace heatlab
