#include "heatlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatlab/error.hpp"

namespace heatlab {

SpaceTimeGrid::SpaceTimeGrid(std::size_t nx, std::size_t nt, double t_final)
    : nx_(nx), nt_(nt), t_final_(t_final) {
  if (nx < 3) throw InvalidInput("grid too coarse: nx must be >= 3, got " + std::to_string(nx));
  if (nt < 1) throw InvalidInput("nt must be >= 1");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw InvalidInput("T_final must be > 0");
}

std::vector<double> SpaceTimeGrid::times() const {
  std::vector<double> t(nt_ + 1);
  for (std::size_t k = 0; k <= nt_; ++k) t[k] = this->t(k);
  return t;
}

void TimeSeries::validate() const {
  if (t.size() != y.size()) throw InvalidInput("time series: t and y lengths differ");
  if (t.empty()) throw InvalidInput("time series is empty");
  if (t.front() != 0.0) throw InvalidInput("time series must start at t = 0");
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k] < t[k - 1]) throw InvalidInput("time series: t must be non-decreasing");
  }
}

double TimeSeries::at(double time) const {
  if (time <= t.front()) return y.front();
  if (time >= t.back()) return y.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t k = static_cast<std::size_t>(it - t.begin());
  const double span = t[k] - t[k - 1];
  if (span <= 0.0) return y[k];
  const double w = (time - t[k - 1]) / span;
  return y[k - 1] + w * (y[k] - y[k - 1]);
}

}  // namespace heatlab
