#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>

namespace heatlab {

namespace detail {

template <class F>
double gauss_kronrod(F&& f, double lo, double hi, double tol = 1e-11) {
  if (hi <= lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, tol);
}

}  // namespace detail

template <class F>
double integrate_over(const ConductivityProfile& a, F&& f, double lo, double hi) {
  double sum = 0.0;
  double left = lo;
  for (double b : a.breakpoints()) {
    if (b <= left) continue;
    const double right = std::min(b, hi);
    sum += detail::gauss_kronrod(f, left, right);
    left = right;
    if (left >= hi) break;
  }
  if (left < hi) sum += detail::gauss_kronrod(f, left, hi);
  return sum;
}

}  // namespace heatlab
