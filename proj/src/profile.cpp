#include "heatlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "heatlab/csv.hpp"
#include "heatlab/error.hpp"
#include "heatlab/spline.hpp"

namespace heatlab {

class ConductivityProfile::Shape {
 public:
  virtual ~Shape() = default;
  virtual Kind kind() const = 0;
  virtual double value(double x) const = 0;
  virtual double derivative(double x) const = 0;
  virtual double second_derivative(double x) const = 0;
  virtual std::vector<double> interior_breakpoints() const { return {}; }
  virtual std::string describe() const = 0;
};

namespace {

using Kind = ConductivityProfile::Kind;

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

class ConstantShape final : public ConductivityProfile::Shape {
 public:
  explicit ConstantShape(double c) : c_(c) {}
  Kind kind() const override { return Kind::constant; }
  double value(double) const override { return c_; }
  double derivative(double) const override { return 0.0; }
  double second_derivative(double) const override { return 0.0; }
  std::string describe() const override { return "const:" + format_number(c_); }

 private:
  double c_;
};

class AffineShape final : public ConductivityProfile::Shape {
 public:
  AffineShape(double left, double right) : left_(left), right_(right) {}
  Kind kind() const override { return Kind::affine; }
  double value(double x) const override { return left_ + (right_ - left_) * x; }
  double derivative(double) const override { return right_ - left_; }
  double second_derivative(double) const override { return 0.0; }
  std::string describe() const override {
    return "affine:" + format_number(left_) + "," + format_number(right_);
  }

 private:
  double left_, right_;
};

class SinusoidalShape final : public ConductivityProfile::Shape {
 public:
  SinusoidalShape(double base, double amp, double freq)
      : base_(base), amp_(amp), w_(freq * std::numbers::pi), freq_(freq) {}
  Kind kind() const override { return Kind::sinusoidal; }
  double value(double x) const override { return base_ + amp_ * std::sin(w_ * x); }
  double derivative(double x) const override { return amp_ * w_ * std::cos(w_ * x); }
  double second_derivative(double x) const override {
    return -amp_ * w_ * w_ * std::sin(w_ * x);
  }
  std::string describe() const override {
    return "sine:" + format_number(base_) + "," + format_number(amp_) + "," +
           format_number(freq_);
  }

 private:
  double base_, amp_, w_, freq_;
};

class PiecewiseLinearShape final : public ConductivityProfile::Shape {
 public:
  explicit PiecewiseLinearShape(std::vector<double> nodes)
      : nodes_(std::move(nodes)), h_(1.0 / static_cast<double>(nodes_.size() - 1)) {}
  Kind kind() const override { return Kind::piecewise_linear; }
  double value(double x) const override {
    double t = 0.0;
    const std::size_t i = cell(x, t);
    return nodes_[i] + (nodes_[i + 1] - nodes_[i]) * t;
  }
  double derivative(double x) const override {
    double t = 0.0;
    const std::size_t i = cell(x, t);
    return (nodes_[i + 1] - nodes_[i]) / h_;
  }
  double second_derivative(double) const override { return 0.0; }
  std::vector<double> interior_breakpoints() const override {
    std::vector<double> b;
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) b.push_back(static_cast<double>(i) * h_);
    return b;
  }
  std::string describe() const override { return "pwl:" + join(nodes_); }

 private:
  std::size_t cell(double x, double& t) const {
    const double s = std::clamp(x, 0.0, 1.0) / h_;
    auto i = std::min(static_cast<std::size_t>(std::floor(s)), nodes_.size() - 2);
    t = s - static_cast<double>(i);
    return i;
  }

  std::vector<double> nodes_;
  double h_;
};

class SampledShape final : public ConductivityProfile::Shape {
 public:
  explicit SampledShape(const std::vector<double>& values) : spline_(values) {}
  Kind kind() const override { return Kind::sampled; }
  double value(double x) const override { return spline_.value(x); }
  double derivative(double x) const override { return spline_.derivative(x); }
  double second_derivative(double x) const override { return spline_.second_derivative(x); }
  std::vector<double> interior_breakpoints() const override {
    std::vector<double> b;
    const std::size_t n = spline_.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      b.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return b;
  }
  std::string describe() const override { return "samples:" + join(spline_.nodes()); }

 private:
  NaturalCubicSpline spline_;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidInput(std::string(what) + " must be finite");
}

void require_positive_samples(const std::vector<double>& v, std::size_t min_count) {
  if (v.size() < min_count) {
    throw InvalidInput("profile needs at least " + std::to_string(min_count) + " values, got " +
                       std::to_string(v.size()));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] <= 0.0) {
      throw InvalidInput("profile value non-positive at index " + std::to_string(i));
    }
  }
}

std::vector<double> parse_numbers(std::string_view text, std::string_view spec) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string token(text.substr(pos, comma - pos));
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InvalidInput("bad number '" + token + "' in '" + std::string(spec) + "'");
    }
    pos = comma + 1;
  }
  return out;
}

void require_arity(const std::vector<double>& args, std::size_t n, std::string_view spec) {
  if (args.size() != n) {
    throw InvalidInput("'" + std::string(spec) + "' expects " + std::to_string(n) +
                       " parameter(s)");
  }
}

}  // namespace

ConductivityProfile::ConductivityProfile(std::shared_ptr<const Shape> shape, bool reflected)
    : shape_(std::move(shape)), reflected_(reflected) {
  min_value_ = value(0.0);
  for (int i = 0; i <= kPositivityScan; ++i) {
    const double x = static_cast<double>(i) / kPositivityScan;
    const double v = value(x);
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream msg;
      msg << "profile " << shape_->describe() << " is non-positive at x=" << x;
      throw InvalidInput(msg.str());
    }
    min_value_ = std::min(min_value_, v);
  }
}

ConductivityProfile ConductivityProfile::constant(double c) {
  require_finite(c, "constant");
  return {std::make_shared<ConstantShape>(c), false};
}

ConductivityProfile ConductivityProfile::affine(double left, double right) {
  require_finite(left, "affine endpoint");
  require_finite(right, "affine endpoint");
  return {std::make_shared<AffineShape>(left, right), false};
}

ConductivityProfile ConductivityProfile::sinusoidal(double base, double amplitude,
                                                    double frequency) {
  require_finite(base, "sine base");
  require_finite(amplitude, "sine amplitude");
  require_finite(frequency, "sine frequency");
  return {std::make_shared<SinusoidalShape>(base, amplitude, frequency), false};
}

ConductivityProfile ConductivityProfile::piecewise_linear(std::vector<double> nodes) {
  require_positive_samples(nodes, 2);
  return {std::make_shared<PiecewiseLinearShape>(std::move(nodes)), false};
}

ConductivityProfile ConductivityProfile::sampled(std::vector<double> values) {
  require_positive_samples(values, 5);
  return {std::make_shared<SampledShape>(values), false};
}

double ConductivityProfile::value(double x) const {
  return shape_->value(reflected_ ? 1.0 - x : x);
}

double ConductivityProfile::derivative(double x) const {
  return reflected_ ? -shape_->derivative(1.0 - x) : shape_->derivative(x);
}

double ConductivityProfile::second_derivative(double x) const {
  return shape_->second_derivative(reflected_ ? 1.0 - x : x);
}

ConductivityProfile::Kind ConductivityProfile::kind() const { return shape_->kind(); }

std::vector<double> ConductivityProfile::breakpoints() const {
  std::vector<double> b = shape_->interior_breakpoints();
  if (reflected_) {
    for (double& v : b) v = 1.0 - v;
    std::reverse(b.begin(), b.end());
  }
  b.insert(b.begin(), 0.0);
  b.push_back(1.0);
  return b;
}

std::string ConductivityProfile::describe() const {
  return reflected_ ? "reflect(" + shape_->describe() + ")" : shape_->describe();
}

ConductivityProfile reflect(const ConductivityProfile& a) {
  ConductivityProfile r = a;
  r.reflected_ = !a.reflected_;
  return r;
}

ConductivityProfile make_profile(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? "" : spec.substr(colon + 1);

  if (name == "csv") return read_profile_csv(std::string(rest));
  if (colon == std::string_view::npos && spec.ends_with(".csv")) {
    return read_profile_csv(std::string(spec));
  }
  if (colon == std::string_view::npos) {
    throw InvalidInput("unknown profile form '" + std::string(spec) + "'");
  }

  const std::vector<double> args = parse_numbers(rest, spec);
  if (name == "const" || name == "constant") {
    require_arity(args, 1, spec);
    return ConductivityProfile::constant(args[0]);
  }
  if (name == "affine") {
    require_arity(args, 2, spec);
    return ConductivityProfile::affine(args[0], args[1]);
  }
  if (name == "sine" || name == "sinusoidal") {
    require_arity(args, 3, spec);
    return ConductivityProfile::sinusoidal(args[0], args[1], args[2]);
  }
  if (name == "pwl" || name == "piecewise_linear") return ConductivityProfile::piecewise_linear(args);
  if (name == "samples") return ConductivityProfile::sampled(args);
  throw InvalidInput("unknown profile form '" + std::string(name) + "'");
}

double thermal_resistance(const ConductivityProfile& a) {
  return integrate_over(a, [&](double x) { return 1.0 / a(x); }, 0.0, 1.0);
}

double liouville_length(const ConductivityProfile& a) {
  return integrate_over(a, [&](double x) { return 1.0 / std::sqrt(a(x)); }, 0.0, 1.0);
}

double asymmetry(const ConductivityProfile& a) {
  double worst = 0.0;
  for (int i = 0; i <= kPositivityScan; ++i) {
    const double x = static_cast<double>(i) / kPositivityScan;
    worst = std::max(worst, std::abs(a(x) - a(1.0 - x)));
  }
  return worst;
}

SampledFunction sample(const ConductivityProfile& a, std::size_t points) {
  if (points < 2) throw InvalidInput("need at least 2 sample points");
  SampledFunction s;
  s.x.resize(points);
  s.y.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    s.x[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    s.y[i] = a(s.x[i]);
  }
  return s;
}

SampledFunction difference(const ConductivityProfile& a1, const ConductivityProfile& a2,
                           std::size_t points) {
  SampledFunction s = sample(a1, points);
  for (std::size_t i = 0; i < points; ++i) s.y[i] -= a2(s.x[i]);
  return s;
}

ConductivityProfile read_profile_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const std::vector<double> x = table.column("x");
  std::vector<double> a = table.column("a");
  const std::size_t n = x.size();
  if (n < 5) throw FileError(path, "profile needs at least 5 rows");
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = static_cast<double>(i) / static_cast<double>(n - 1);
    if (std::abs(x[i] - expected) > 1e-9) {
      throw FileError(path, "x must be uniform from 0 to 1 (row " + std::to_string(i + 1) + ")");
    }
  }
  return ConductivityProfile::sampled(std::move(a));
}

void write_profile_csv(const std::string& path, const ConductivityProfile& a,
                       std::size_t points) {
  const SampledFunction s = sample(a, points);
  write_csv(path, {"x", "a"}, {s.x, s.y});
}

}  // namespace heatlab
