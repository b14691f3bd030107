#pragma once

#include <span>
#include <vector>

namespace heatlab {

// Natural cubic spline through values sampled on a uniform grid over [0, 1].
class NaturalCubicSpline {
 public:
  explicit NaturalCubicSpline(std::span<const double> values);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  const std::vector<double>& nodes() const { return y_; }
  std::size_t size() const { return y_.size(); }

 private:
  // Locates the cell containing x and the local offset from its left node.
  std::size_t cell(double x, double& offset) const;

  double h_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the nodes
};

}  // namespace heatlab
