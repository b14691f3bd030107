#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "heatlab/error.hpp"
#include "heatlab/laplace.hpp"
#include "heatlab/profile.hpp"
#include "heatlab/property_c.hpp"

using namespace heatlab;

namespace {

// tests/oracles/property_c_oracle.py: exact least squares at 60 digits on the
// 2049-point grid, a1 = a2 = 1, default lambda grid, target x (1 - x).
constexpr double kOracleResidual[] = {0.078762881071, 0.0712600666614, 0.0375247058329,
                                      0.0230493614572, 0.0160218446353};
constexpr double kOracleR40 = 0.00111761945349;
constexpr double kOracleTargetNorm = 0.18257418583505018208;
constexpr double kOracleJ1 = -0.45989548208991438419;

std::vector<double> target_on(const ProductDictionary& d, auto&& fn) {
  std::vector<double> t;
  for (double x : d.x) t.push_back(fn(x));
  return t;
}

}  // namespace

TEST_CASE("a1 = a2 = 1, lambda = 1: column is cosh^2 normalized") {
  auto one = make_profile("const:1");
  auto d = build_product_dictionary(one, one, std::vector<double>{1.0}, 257);
  REQUIRE(d.size() == 1);
  const double c1 = std::cosh(1.0);
  CHECK(d.scales[0] == doctest::Approx(c1 * c1).epsilon(1e-10));
  for (std::size_t i = 0; i < d.x.size(); i += 16) {
    const double c = std::cosh(d.x[i]);
    CHECK(d.columns[0][i] == doctest::Approx(c * c / (c1 * c1)).epsilon(1e-10));
  }
}

TEST_CASE("small lambda column is nearly constant") {
  auto one = make_profile("const:1");
  auto d = build_product_dictionary(one, one, std::vector<double>{1e-10}, 129);
  for (double v : d.columns[0]) CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a1 = 1, a2 = 4, lambda = 1: column is cosh(x) cosh(x/2) normalized") {
  auto d = build_product_dictionary(make_profile("const:1"), make_profile("const:4"),
                                    std::vector<double>{1.0}, 257);
  const double top = std::cosh(1.0) * std::cosh(0.5);
  for (std::size_t i = 0; i < d.x.size(); i += 16)
    CHECK(d.columns[0][i] ==
          doctest::Approx(std::cosh(d.x[i]) * std::cosh(d.x[i] / 2) / top).epsilon(1e-10));
}

TEST_CASE("swapping the profiles leaves every column unchanged") {
  auto a1 = make_profile("affine:1,2");
  auto a2 = make_profile("sine:1,0.5,1");
  auto l = log_spaced(0.5, 20, 6);
  auto d12 = build_product_dictionary(a1, a2, l, 513);
  auto d21 = build_product_dictionary(a2, a1, l, 513);
  for (std::size_t k = 0; k < l.size(); ++k)
    for (std::size_t i = 0; i < d12.x.size(); ++i)
      CHECK(d12.columns[k][i] == doctest::Approx(d21.columns[k][i]).epsilon(1e-14));
}

TEST_CASE("dictionary guards") {
  auto one = make_profile("const:1");
  CHECK_THROWS_AS(build_product_dictionary(one, one, std::vector<double>{1.0, 1.0}), InvalidInput);
  CHECK_THROWS_AS(build_product_dictionary(one, one, std::vector<double>{-1.0}), InvalidInput);
  CHECK_THROWS_AS(build_product_dictionary(one, one, std::vector<double>{1e7}), InvalidInput);
}

TEST_CASE("a column of the dictionary has zero residual") {
  auto a = make_profile("affine:1,2");
  auto d = build_product_dictionary(a, a, log_spaced(0.25, 25, 8), 513);
  auto curve = completeness_residual(d, d.columns[0]);
  CHECK(curve.residual[0] < 1e-12);
  auto scaled = d.columns[3];
  for (double& v : scaled) v *= -7.5;
  CHECK(completeness_residual(d, scaled).residual[3] < 1e-12);
}

TEST_CASE("residual is non-increasing for arbitrary targets and orderings") {
  auto a1 = make_profile("const:1");
  auto a2 = make_profile("affine:1,2");
  auto l = default_lambda_grid();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(l.begin(), l.end(), rng);
    auto d = build_product_dictionary(a1, a2, l, 1025);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> noise(d.x.size());
    for (double& v : noise) v = n(rng);
    for (const auto& target :
         {noise, target_on(d, [](double x) { return std::sin(9 * x); }),
          target_on(d, [](double x) { return x * (1 - x); })}) {
      auto curve = completeness_residual(d, target);
      const double slack = 64 * 2.2e-16 * curve.target_norm;
      for (std::size_t i = 1; i < curve.residual.size(); ++i)
        CHECK(curve.residual[i] <= curve.residual[i - 1] + slack);
    }
  }
}

TEST_CASE("x(1-x) residuals against the high-precision oracle") {
  auto one = make_profile("const:1");
  auto d = build_product_dictionary(one, one, default_lambda_grid(), 2049);
  auto curve = completeness_residual(d, target_on(d, [](double x) { return x * (1 - x); }));
  REQUIRE(curve.residual.size() == 40);
  CHECK(curve.target_norm == doctest::Approx(kOracleTargetNorm).epsilon(1e-13));
  for (std::size_t n = 0; n < 5; ++n)
    CHECK(curve.residual[n] == doctest::Approx(kOracleResidual[n]).epsilon(1e-5));
  // Double precision can only lose directions relative to the exact solve.
  CHECK(curve.residual.back() >= kOracleR40 * (1 - 1e-6));
  CHECK(curve.residual.back() < 0.003);
  CHECK_FALSE(curve.dropped.empty());
}

TEST_CASE("orthogonality functional") {
  auto one = make_profile("const:1");
  auto lin = make_profile("affine:1,2");
  auto zero = difference(lin, lin, 257);
  for (double l : {0.5, 3.0}) CHECK(orthogonality_functional(zero, lin, lin, l) == 0.0);
  auto p = difference(one, lin, 2049);
  CHECK(std::abs(orthogonality_functional(p, one, lin, 1.0) - kOracleJ1) < 1e-12);
  auto coarse = difference(one, lin, 257);
  CHECK(std::abs(orthogonality_functional(coarse, one, lin, 1.0) - kOracleJ1) < 1e-10);
  CHECK_THROWS_AS(orthogonality_functional(difference(one, lin, 256), one, lin, 1.0),
                  InvalidInput);
}

TEST_CASE("simpson rule") {
  std::vector<double> y(101);
  for (std::size_t i = 0; i < y.size(); ++i) {
    double x = static_cast<double>(i) / 100.0;
    y[i] = x * x * x;
  }
  CHECK(simpson(y) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(simpson(std::vector<double>{1.0, 2.0}), InvalidInput);
}
