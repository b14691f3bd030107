#pragma once

#include <cstddef>
#include <vector>

namespace heatlab {

/// Uniform space-time grid on [0, 1] x [0, T_final].
class SpaceTimeGrid {
 public:
  /// Throws InvalidInput unless nx >= 3, nt >= 1 and t_final > 0.
  SpaceTimeGrid(std::size_t nx, std::size_t nt, double t_final);

  std::size_t nx() const { return nx_; }
  std::size_t nt() const { return nt_; }
  double t_final() const { return t_final_; }
  double dx() const { return 1.0 / static_cast<double>(nx_ - 1); }
  double dt() const { return t_final_ / static_cast<double>(nt_); }
  double x(std::size_t i) const { return static_cast<double>(i) * dx(); }
  double t(std::size_t k) const { return static_cast<double>(k) * dt(); }
  std::vector<double> times() const;

  /// Same final time with dx and dt halved.
  SpaceTimeGrid refined() const { return {2 * (nx_ - 1) + 1, 2 * nt_, t_final_}; }

 private:
  std::size_t nx_;
  std::size_t nt_;
  double t_final_;
};

/// Sampled boundary data: temperature drive f or fluxes g, h.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> y;

  std::size_t size() const { return t.size(); }
  /// Throws InvalidInput unless lengths match, t[0] = 0 and t is non-decreasing.
  void validate() const;
  /// Piecewise-linear interpolation, clamped outside [t.front(), t.back()].
  double at(double time) const;
};

}  // namespace heatlab
