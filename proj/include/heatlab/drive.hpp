#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "heatlab/grid.hpp"

namespace heatlab {

/// Boundary temperature f(t) imposed at x = 1.
class BoundaryDrive {
 public:
  enum class Kind { zero, step, ramp, exp_decay, series };

  /// f = 0.
  static BoundaryDrive zero();
  /// f(t) = c for t > 0.
  static BoundaryDrive step(double c);
  /// f(t) = c t.
  static BoundaryDrive ramp(double c);
  /// f(t) = exp(-c t).
  static BoundaryDrive exp_decay(double c);
  /// Linear interpolation of samples; held constant past the last sample.
  static BoundaryDrive series(TimeSeries samples);

  double operator()(double t) const;
  Kind kind() const { return kind_; }
  /// Closed-form Laplace transform at lambda > 0, when one exists.
  std::optional<double> laplace(double lambda) const;
  std::string describe() const;

 private:
  BoundaryDrive(Kind kind, double c) : kind_(kind), c_(c) {}

  Kind kind_;
  double c_ = 0.0;
  TimeSeries samples_;
};

/// Parses zero | step:c | ramp:c | exp_decay:c | csv:path | path.csv
/// (CSV header "t,value"). Throws InvalidInput / FileError.
BoundaryDrive make_drive(std::string_view spec);

}  // namespace heatlab
