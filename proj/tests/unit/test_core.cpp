#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "heatlab/csv.hpp"
#include "heatlab/drive.hpp"
#include "heatlab/error.hpp"
#include "heatlab/expression.hpp"
#include "heatlab/grid.hpp"
#include "heatlab/parallel.hpp"
#include "heatlab/profile.hpp"
#include "heatlab/spline.hpp"

using namespace heatlab;
namespace fs = std::filesystem;

namespace {

std::string scratch_file(const std::string& name, const std::string& content) {
  auto dir = fs::temp_directory_path() / "heatlab_test_core";
  fs::create_directories(dir);
  auto p = (dir / name).string();
  std::ofstream(p) << content;
  return p;
}

std::string error_message(auto&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("constant profile has zero derivatives") {
  auto a = make_profile("const:1");
  for (double x : {0.0, 0.3, 1.0}) {
    CHECK(a(x) == 1.0);
    CHECK(a.derivative(x) == 0.0);
    CHECK(a.second_derivative(x) == 0.0);
  }
  CHECK(a.kind() == ConductivityProfile::Kind::constant);
}

TEST_CASE("affine profile takes endpoint values") {
  auto a = make_profile("affine:1,2");
  CHECK(a(0.0) == 1.0);
  CHECK(a(1.0) == 2.0);
  CHECK(a(0.25) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(a.derivative(0.7) == doctest::Approx(1.0));
  CHECK(a.second_derivative(0.7) == 0.0);
  CHECK(a.describe() == "affine:1,2");
}

TEST_CASE("sinusoidal profile derivatives match closed form") {
  auto a = make_profile("sine:1,0.5,0.5");
  const double w = 0.5 * std::numbers::pi;
  for (double x : {0.0, 0.2, 0.9}) {
    CHECK(a(x) == doctest::Approx(1 + 0.5 * std::sin(w * x)).epsilon(1e-15));
    CHECK(a.derivative(x) == doctest::Approx(0.5 * w * std::cos(w * x)).epsilon(1e-14));
    CHECK(a.second_derivative(x) == doctest::Approx(-0.5 * w * w * std::sin(w * x)).epsilon(1e-14));
  }
}

TEST_CASE("sampled profile rejects a non-positive sample by index") {
  auto msg = error_message([] { make_profile("samples:1,0,1,1,1"); });
  CHECK(msg.find("non-positive at index 1") != std::string::npos);
  CHECK_THROWS_AS(make_profile("samples:1,0,1,1,1"), InvalidInput);
  CHECK_THROWS_AS(make_profile("samples:1,1,1,1"), InvalidInput);
}

TEST_CASE("unknown or malformed profile specs are rejected") {
  CHECK_THROWS_AS(make_profile("cubic:1,2"), InvalidInput);
  CHECK_THROWS_AS(make_profile("nonsense"), InvalidInput);
  CHECK_THROWS_AS(make_profile("affine:1"), InvalidInput);
  CHECK_THROWS_AS(make_profile("affine:1,x"), InvalidInput);
  CHECK_THROWS_AS(make_profile("affine:2,-1"), InvalidInput);  // 2 - 3x crosses zero
  CHECK_THROWS_AS(make_profile("const:0"), InvalidInput);
  CHECK_THROWS_AS(make_profile("sine:1,2,2"), InvalidInput);
}

TEST_CASE("missing profile file raises FileError naming the path") {
  try {
    make_profile("csv:/no/such/profile.csv");
    FAIL("expected FileError");
  } catch (const FileError& e) {
    CHECK(e.path() == "/no/such/profile.csv");
    CHECK(std::string(e.what()).find("/no/such/profile.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(make_profile("/no/such/profile.csv"), FileError);
}

TEST_CASE("reflect maps 1 + x to 2 - x with sign-adjusted derivatives") {
  auto a = make_profile("affine:1,2");
  auto r = reflect(a);
  for (double x : {0.0, 0.1, 0.5, 1.0}) CHECK(r(x) == doctest::Approx(2.0 - x).epsilon(1e-15));
  CHECK(r.derivative(0.3) == doctest::Approx(-1.0));
  auto s = make_profile("sine:1,0.5,0.5");
  auto rs = reflect(s);
  for (double x : {0.1, 0.6}) {
    CHECK(rs.derivative(x) == doctest::Approx(-s.derivative(1 - x)).epsilon(1e-15));
    CHECK(rs.second_derivative(x) == doctest::Approx(s.second_derivative(1 - x)).epsilon(1e-15));
  }
  auto c = reflect(make_profile("const:1"));
  CHECK(c(0.3) == 1.0);
}

TEST_CASE("reflect is an involution for every profile kind") {
  for (const char* spec : {"const:2", "affine:1,2", "sine:1,0.5,0.5", "pwl:1,3,2,1.5",
                           "samples:1,1.2,1.7,1.1,2,1.4"}) {
    auto a = make_profile(spec);
    auto rr = reflect(reflect(a));
    CHECK_FALSE(rr.reflected());
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      double x = i / 1000.0;
      worst = std::max(worst, std::abs(rr(x) - a(x)));
    }
    CHECK(worst < 1e-14);
  }
}

TEST_CASE("spline reproduces samples at the nodes") {
  std::vector<double> v{1.0, 1.3, 0.8, 2.0, 1.1, 1.7, 1.2};
  NaturalCubicSpline s(v);
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(s.value(static_cast<double>(i) / 6.0) == doctest::Approx(v[i]).epsilon(1e-15));
  CHECK(s.second_derivative(0.0) == doctest::Approx(0.0));
  CHECK(s.second_derivative(1.0) == doctest::Approx(0.0));
  auto a = ConductivityProfile::sampled(v);
  for (std::size_t i = 0; i < v.size(); ++i)
    CHECK(a(static_cast<double>(i) / 6.0) == doctest::Approx(v[i]).epsilon(1e-15));
}

TEST_CASE("spline is exact for linear data") {
  NaturalCubicSpline s(std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
  for (double x : {0.05, 0.33, 0.91}) {
    CHECK(s.value(x) == doctest::Approx(1 + x).epsilon(1e-14));
    CHECK(s.derivative(x) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("thermal resistance examples") {
  CHECK(std::abs(thermal_resistance(make_profile("const:1")) - 1.0) < 1e-12);
  CHECK(std::abs(thermal_resistance(make_profile("affine:1,2")) - std::log(2.0)) < 1e-12);
  CHECK(std::abs(thermal_resistance(make_profile("const:4")) - 0.25) < 1e-12);
  // 1 / (1 + x)^2 on a pwl profile with a kink still integrates exactly per piece.
  auto p = make_profile("pwl:1,2,1");
  CHECK(std::abs(thermal_resistance(p) - std::log(2.0)) < 1e-10);
}

TEST_CASE("thermal resistance is invariant under reflection") {
  for (const char* spec : {"affine:1,3", "sine:1,0.5,0.5", "pwl:1,3,2,1.5", "samples:1,2,1.5,3,1"}) {
    auto a = make_profile(spec);
    CHECK(std::abs(thermal_resistance(a) - thermal_resistance(reflect(a))) < 1e-10);
  }
}

TEST_CASE("liouville length of a constant profile") {
  CHECK(liouville_length(make_profile("const:4")) == doctest::Approx(0.5).epsilon(1e-12));
  // int (1+x)^{-1/2} = 2 (sqrt 2 - 1)
  CHECK(liouville_length(make_profile("affine:1,2")) ==
        doctest::Approx(2 * (std::sqrt(2.0) - 1)).epsilon(1e-12));
}

TEST_CASE("asymmetry and difference") {
  CHECK(asymmetry(make_profile("const:3")) == 0.0);
  CHECK(asymmetry(make_profile("affine:1,2")) == doctest::Approx(1.0));
  CHECK(asymmetry(make_profile("sine:1,0.5,1")) < 1e-12);
  auto p = difference(make_profile("const:1"), make_profile("affine:1,2"), 5);
  CHECK(p.y[0] == 0.0);
  CHECK(p.y[4] == doctest::Approx(-1.0));  // signed, no positivity requirement
}

TEST_CASE("profile CSV round trip") {
  auto a = make_profile("sine:1,0.3,1");
  auto dir = fs::temp_directory_path() / "heatlab_test_core";
  fs::create_directories(dir);
  auto path = (dir / "profile.csv").string();
  write_profile_csv(path, a, 41);
  auto b = make_profile(path);
  CHECK(b.kind() == ConductivityProfile::Kind::sampled);
  for (int i = 0; i <= 40; ++i) CHECK(b(i / 40.0) == doctest::Approx(a(i / 40.0)).epsilon(1e-15));
  auto c = make_profile("csv:" + path);
  CHECK(c(0.5) == doctest::Approx(a(0.5)));
}

TEST_CASE("profile CSV with non-uniform x or too few rows is rejected") {
  auto bad = scratch_file("nonuniform.csv", "x,a\n0,1\n0.1,1\n0.5,1\n0.7,1\n1,1\n");
  CHECK_THROWS(make_profile(bad));
  auto few = scratch_file("few.csv", "x,a\n0,1\n0.5,1\n1,1\n");
  CHECK_THROWS(make_profile(few));
  auto neg = scratch_file("neg.csv", "x,a\n0,1\n0.25,1\n0.5,-1\n0.75,1\n1,1\n");
  CHECK(error_message([&] { make_profile(neg); }).find("index 2") != std::string::npos);
}

TEST_CASE("grid guards and spacing") {
  CHECK_THROWS_AS(SpaceTimeGrid(2, 10, 1.0), InvalidInput);
  CHECK_THROWS_AS(SpaceTimeGrid(5, 0, 1.0), InvalidInput);
  CHECK_THROWS_AS(SpaceTimeGrid(5, 10, 0.0), InvalidInput);
  SpaceTimeGrid g(5, 10, 2.0);
  CHECK(g.dx() == 0.25);
  CHECK(g.dt() == 0.2);
  CHECK(g.x(4) == 1.0);
  CHECK(g.times().size() == 11);
  CHECK(g.times().back() == doctest::Approx(2.0));
  auto r = g.refined();
  CHECK(r.nx() == 9);
  CHECK(r.nt() == 20);
  CHECK(r.t_final() == 2.0);
}

TEST_CASE("time series validation and interpolation") {
  TimeSeries s{{0.0, 1.0, 2.0}, {0.0, 2.0, 4.0}};
  CHECK_NOTHROW(s.validate());
  CHECK(s.at(0.5) == doctest::Approx(1.0));
  CHECK(s.at(5.0) == 4.0);
  CHECK_THROWS_AS((TimeSeries{{0.0, 1.0}, {1.0}}).validate(), InvalidInput);
  CHECK_THROWS_AS((TimeSeries{{0.5, 1.0}, {1.0, 2.0}}).validate(), InvalidInput);
  CHECK_THROWS_AS((TimeSeries{{0.0, 1.0, 0.5}, {1.0, 2.0, 3.0}}).validate(), InvalidInput);
}

TEST_CASE("csv numbers round-trip exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1.4426950408889634, 0.0})
    CHECK(std::stod(format_number(v)) == v);
  auto p = (fs::temp_directory_path() / "heatlab_test_core" / "t.csv").string();
  fs::create_directories(fs::path(p).parent_path());
  write_csv(p, {"t", "value"}, {{0.0, 0.5}, {1.0 / 3.0, 2.0}});
  auto t = read_csv(p);
  CHECK(t.header == std::vector<std::string>{"t", "value"});
  CHECK(t.column("value")[0] == 1.0 / 3.0);
  CHECK_THROWS_AS(t.column("nope"), InvalidInput);
  CHECK_THROWS_AS(read_csv("/no/such/file.csv"), FileError);
}

TEST_CASE("expression parser") {
  auto e = Expression::parse("x*(1-x)");
  CHECK(e(0.5) == doctest::Approx(0.25));
  CHECK(Expression::parse("-x^2 + 2*x")(3.0) == doctest::Approx(-3.0));
  CHECK(Expression::parse("2^3^2")(0.0) == doctest::Approx(512.0));
  CHECK(Expression::parse("1 + 0.5*sin(pi*x)")(0.5) == doctest::Approx(1.5));
  CHECK(Expression::parse("exp(log(e))")(0.0) == doctest::Approx(std::exp(1.0)));
  CHECK(Expression::parse("sqrt(abs(x))/cosh(0)")(-4.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Expression::parse("x*(1-x"), InvalidInput);
  CHECK_THROWS_AS(Expression::parse("foo(x)"), InvalidInput);
  CHECK_THROWS_AS(Expression::parse(""), InvalidInput);
}

TEST_CASE("drives and their closed-form transforms") {
  auto step = make_drive("step:2");
  CHECK(step(0.3) == 2.0);
  CHECK(*step.laplace(4.0) == doctest::Approx(0.5));
  auto ramp = make_drive("ramp:3");
  CHECK(ramp(2.0) == 6.0);
  CHECK(*ramp.laplace(2.0) == doctest::Approx(0.75));
  auto dec = make_drive("exp_decay:1");
  CHECK(dec(1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(*dec.laplace(1.0) == doctest::Approx(0.5));
  auto zero = make_drive("zero");
  CHECK(zero(1.0) == 0.0);
  CHECK(*zero.laplace(1.0) == 0.0);
  CHECK_THROWS_AS(make_drive("square:1"), InvalidInput);
  CHECK_THROWS_AS(make_drive("step:abc"), InvalidInput);
  CHECK_THROWS_AS(make_drive("csv:/no/such/drive.csv"), FileError);
}

TEST_CASE("series drive interpolates and holds its last value") {
  auto p = scratch_file("drive.csv", "t,value\n0,0\n1,1\n2,1\n");
  auto d = make_drive(p);
  CHECK(d.kind() == BoundaryDrive::Kind::series);
  CHECK(d(0.5) == doctest::Approx(0.5));
  CHECK(d(10.0) == 1.0);
  CHECK_FALSE(d.laplace(1.0).has_value());
}

TEST_CASE("parallel_for visits each index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10,
                               [](std::size_t i) {
                                 if (i == 7) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
  CHECK(worker_count() >= 1);
}
