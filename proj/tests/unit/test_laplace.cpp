#include <doctest.h>

#include <cmath>

#include "heatlab/error.hpp"
#include "heatlab/laplace.hpp"

using namespace heatlab;

namespace {

TimeSeries sampled(double t_final, std::size_t n, auto&& fn) {
  TimeSeries s;
  for (std::size_t k = 0; k <= n; ++k) {
    double t = t_final * static_cast<double>(k) / static_cast<double>(n);
    s.t.push_back(t);
    s.y.push_back(fn(t));
  }
  return s;
}

}  // namespace

TEST_CASE("step with constant tail transforms to 1/lambda") {
  auto s = sampled(2.0, 10, [](double) { return 1.0; });
  std::vector<double> l{0.3, 1.0, 7.0};
  auto F = laplace_transform(s, l, TailModel::constant);
  for (std::size_t i = 0; i < l.size(); ++i) CHECK(std::abs(F.values[i] - 1.0 / l[i]) < 1e-12);
}

TEST_CASE("exp(-t) on [0, 30] with zero tail gives 1/2 at lambda 1") {
  auto s = sampled(30.0, 1200000, [](double t) { return std::exp(-t); });
  std::vector<double> l{1.0};
  auto F = laplace_transform(s, l, TailModel::zero);
  CHECK(std::abs(F.values[0] - 0.5) < 1e-10);
}

TEST_CASE("ramp on [0, 40] with zero tail gives 1 at lambda 1") {
  auto s = sampled(40.0, 400, [](double t) { return t; });
  std::vector<double> l{1.0};
  auto F = laplace_transform(s, l, TailModel::zero);
  CHECK(std::abs(F.values[0] - 1.0) < 1e-10);
}

TEST_CASE("piecewise-linear data are transformed without quadrature error") {
  // Hat on [0, 2] peaking at 1: F = (1 - e^{-l})^2 / l^2.
  TimeSeries s{{0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}};
  for (double l : {1e-6, 1e-3, 0.5, 3.0, 80.0}) {
    auto F = laplace_transform(s, std::vector<double>{l}, TailModel::zero);
    const double e = -std::expm1(-l);
    CHECK(F.values[0] == doctest::Approx(e * e / (l * l)).epsilon(1e-12));
  }
}

TEST_CASE("transform is linear") {
  auto a = sampled(5.0, 500, [](double t) { return std::sin(t); });
  auto b = sampled(5.0, 500, [](double t) { return t * t; });
  TimeSeries c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c.y[k] = 2.0 * a.y[k] - 3.0 * b.y[k];
  auto l = default_lambda_grid();
  auto Fa = laplace_transform(a, l, TailModel::constant);
  auto Fb = laplace_transform(b, l, TailModel::constant);
  auto Fc = laplace_transform(c, l, TailModel::constant);
  for (std::size_t i = 0; i < l.size(); ++i)
    CHECK(std::abs(Fc.values[i] - (2 * Fa.values[i] - 3 * Fb.values[i])) <
          1e-12 * (1 + std::abs(Fc.values[i])));
}

TEST_CASE("transform of non-negative data decreases in lambda") {
  auto s = sampled(3.0, 300, [](double t) { return 1.0 + std::cos(3 * t); });
  auto F = laplace_transform(s, default_lambda_grid(), TailModel::zero);
  for (std::size_t i = 1; i < F.values.size(); ++i) CHECK(F.values[i] <= F.values[i - 1]);
}

TEST_CASE("zero and constant tails differ by at most M exp(-lambda T) / lambda") {
  auto s = sampled(4.0, 200, [](double t) { return std::cos(t); });
  auto l = default_lambda_grid();
  auto z = laplace_transform(s, l, TailModel::zero);
  auto c = laplace_transform(s, l, TailModel::constant);
  for (std::size_t i = 0; i < l.size(); ++i)
    CHECK(std::abs(z.values[i] - c.values[i]) <= std::exp(-l[i] * 4.0) / l[i] + 1e-15);
}

TEST_CASE("non-positive lambda is rejected") {
  auto s = sampled(1.0, 10, [](double) { return 1.0; });
  CHECK_THROWS_AS(laplace_transform(s, std::vector<double>{1.0, 0.0}, TailModel::zero),
                  InvalidInput);
  CHECK_THROWS_AS(laplace_transform(s, std::vector<double>{-2.0}, TailModel::zero), InvalidInput);
}

TEST_CASE("truncation warning when lambda_min T is small") {
  auto s = sampled(1.0, 10, [](double) { return 1.0; });
  CHECK(laplace_transform(s, std::vector<double>{1.0}, TailModel::zero).truncation_warning);
  CHECK_FALSE(laplace_transform(s, std::vector<double>{6.0}, TailModel::zero).truncation_warning);
}

TEST_CASE("default lambda grid") {
  auto l = default_lambda_grid();
  REQUIRE(l.size() == 40);
  CHECK(l.front() == doctest::Approx(0.25));
  CHECK(l.back() == doctest::Approx(25.0));
  for (std::size_t i = 2; i < l.size(); ++i)
    CHECK(l[i] / l[i - 1] == doctest::Approx(l[1] / l[0]));
  CHECK(to_string(SpectralTag::H) == "H");
}
