#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heatlab {

/// Number of interior scan intervals used for the positivity check.
inline constexpr int kPositivityScan = 1000;

/**
 * Thermal conductivity a(x) > 0 on [0, 1] with first and second derivative
 * access.
 *
 * Analytic forms carry closed-form derivatives. Sampled profiles go through a
 * natural cubic spline. Piecewise-linear profiles have a piecewise-constant
 * a' and a'' = 0 between nodes (the kinks are not represented); they are the
 * parameterization used by the reconstructor and only need point values.
 *
 * Profiles are immutable and cheap to copy (shared representation).
 */
class ConductivityProfile {
 public:
  enum class Kind { constant, affine, sinusoidal, piecewise_linear, sampled };

  /// a(x) = c.
  static ConductivityProfile constant(double c);
  /// a(x) = left + (right - left) x, i.e. endpoint values a(0), a(1).
  static ConductivityProfile affine(double left, double right);
  /// a(x) = base + amplitude * sin(frequency * pi * x).
  static ConductivityProfile sinusoidal(double base, double amplitude, double frequency);
  /// Linear interpolation of node values on a uniform grid over [0, 1].
  static ConductivityProfile piecewise_linear(std::vector<double> nodes);
  /// Natural cubic spline through samples on a uniform grid over [0, 1].
  static ConductivityProfile sampled(std::vector<double> values);

  double operator()(double x) const { return value(x); }
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  Kind kind() const;
  bool reflected() const { return reflected_; }
  /// Smallest value seen by the positivity scan.
  double min_value() const { return min_value_; }
  /// Points in [0, 1] where the profile is not smooth (always includes 0 and 1).
  std::vector<double> breakpoints() const;
  /// Human-readable form, e.g. "affine:1,2" or "reflect(sine:1,0.5,1)".
  std::string describe() const;

  class Shape;

 private:
  ConductivityProfile(std::shared_ptr<const Shape> shape, bool reflected);
  friend ConductivityProfile reflect(const ConductivityProfile& a);

  std::shared_ptr<const Shape> shape_;
  bool reflected_ = false;
  double min_value_ = 0.0;
};

/**
 * Parses a profile description:
 *   const:c | affine:a0,a1 | sine:base,amp,freq | pwl:v0,v1,... |
 *   samples:v0,v1,... | csv:path | path ending in ".csv"
 * Throws InvalidInput for unknown forms or non-positive values, FileError for
 * unreadable files.
 */
ConductivityProfile make_profile(std::string_view spec);

/// The mirrored profile x -> a(1 - x). Applying it twice returns the original.
ConductivityProfile reflect(const ConductivityProfile& a);

/// Integral of 1/a over [0, 1] (absolute error <= 1e-10).
double thermal_resistance(const ConductivityProfile& a);

/// Integral of a^{-1/2} over [0, 1], i.e. the Liouville length.
double liouville_length(const ConductivityProfile& a);

/// max over a dense scan of |a(x) - a(1 - x)|.
double asymmetry(const ConductivityProfile& a);

/// Adaptive Gauss-Kronrod integral of f over [lo, hi] honoring the profile's
/// breakpoints.
template <class F>
double integrate_over(const ConductivityProfile& a, F&& f, double lo, double hi);

/// Plain function values on a uniform grid over [0, 1]. Used for signed
/// differences of profiles, which need not be positive.
struct SampledFunction {
  std::vector<double> x;
  std::vector<double> y;
};

SampledFunction sample(const ConductivityProfile& a, std::size_t points);
/// p = a1 - a2 on a uniform grid.
SampledFunction difference(const ConductivityProfile& a1, const ConductivityProfile& a2,
                           std::size_t points);

/// Reads a profile CSV with header "x,a" and uniform x from 0 to 1.
ConductivityProfile read_profile_csv(const std::string& path);
/// Writes a(x) on a uniform grid of `points` nodes as "x,a".
void write_profile_csv(const std::string& path, const ConductivityProfile& a,
                       std::size_t points);

}  // namespace heatlab

#include "heatlab/detail/quadrature.hpp"
