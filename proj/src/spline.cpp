#include "heatlab/spline.hpp"

#include <algorithm>
#include <cmath>

#include "heatlab/error.hpp"

namespace heatlab {

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> values)
    : y_(values.begin(), values.end()), m_(values.size(), 0.0) {
  const std::size_t n = y_.size();
  if (n < 3) throw InvalidInput("cubic spline needs at least 3 samples");
  h_ = 1.0 / static_cast<double>(n - 1);

  // Interior system m[i-1] + 4 m[i] + m[i+1] = 6/h^2 (y[i-1] - 2 y[i] + y[i+1]),
  // m[0] = m[n-1] = 0, solved by the Thomas algorithm.
  const std::size_t k = n - 2;
  std::vector<double> diag(k, 4.0), rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = 6.0 / (h_ * h_) * (y_[i] - 2.0 * y_[i + 1] + y_[i + 2]);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = k; i-- > 0;) {
    const double upper = (i + 1 < k) ? m_[i + 2] : 0.0;
    m_[i + 1] = (rhs[i] - upper) / diag[i];
  }
}

std::size_t NaturalCubicSpline::cell(double x, double& offset) const {
  const double s = std::clamp(x, 0.0, 1.0) / h_;
  auto i = static_cast<std::size_t>(std::floor(s));
  i = std::min(i, y_.size() - 2);
  offset = std::clamp(x, 0.0, 1.0) - static_cast<double>(i) * h_;
  return i;
}

double NaturalCubicSpline::value(double x) const {
  // Exact node hits return the sample itself.
  const double s = std::clamp(x, 0.0, 1.0) * static_cast<double>(y_.size() - 1);
  const double r = std::round(s);
  if (std::abs(s - r) < 1e-12) return y_[static_cast<std::size_t>(r)];

  double t = 0.0;
  const std::size_t i = cell(x, t);
  const double slope = (y_[i + 1] - y_[i]) / h_ - h_ * (2.0 * m_[i] + m_[i + 1]) / 6.0;
  return y_[i] + t * (slope + t * (0.5 * m_[i] + t * (m_[i + 1] - m_[i]) / (6.0 * h_)));
}

double NaturalCubicSpline::derivative(double x) const {
  double t = 0.0;
  const std::size_t i = cell(x, t);
  const double slope = (y_[i + 1] - y_[i]) / h_ - h_ * (2.0 * m_[i] + m_[i + 1]) / 6.0;
  return slope + t * (m_[i] + 0.5 * t * (m_[i + 1] - m_[i]) / h_);
}

double NaturalCubicSpline::second_derivative(double x) const {
  double t = 0.0;
  const std::size_t i = cell(x, t);
  return m_[i] + t * (m_[i + 1] - m_[i]) / h_;
}

}  // namespace heatlab
