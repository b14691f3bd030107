#include "heatlab/drive.hpp"

#include <cmath>

#include "heatlab/csv.hpp"
#include "heatlab/error.hpp"

namespace heatlab {

BoundaryDrive BoundaryDrive::zero() { return {Kind::zero, 0.0}; }
BoundaryDrive BoundaryDrive::step(double c) { return {Kind::step, c}; }
BoundaryDrive BoundaryDrive::ramp(double c) { return {Kind::ramp, c}; }
BoundaryDrive BoundaryDrive::exp_decay(double c) { return {Kind::exp_decay, c}; }

BoundaryDrive BoundaryDrive::series(TimeSeries samples) {
  samples.validate();
  for (double v : samples.y) {
    if (!std::isfinite(v)) throw InvalidInput("drive series contains a non-finite sample");
  }
  BoundaryDrive d{Kind::series, 0.0};
  d.samples_ = std::move(samples);
  return d;
}

double BoundaryDrive::operator()(double t) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::step: return c_;
    case Kind::ramp: return c_ * t;
    case Kind::exp_decay: return std::exp(-c_ * t);
    case Kind::series: return samples_.at(t);
  }
  return 0.0;
}

std::optional<double> BoundaryDrive::laplace(double lambda) const {
  switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::step: return c_ / lambda;
    case Kind::ramp: return c_ / (lambda * lambda);
    case Kind::exp_decay: return 1.0 / (lambda + c_);
    case Kind::series: return std::nullopt;
  }
  return std::nullopt;
}

std::string BoundaryDrive::describe() const {
  switch (kind_) {
    case Kind::zero: return "zero";
    case Kind::step: return "step:" + format_number(c_);
    case Kind::ramp: return "ramp:" + format_number(c_);
    case Kind::exp_decay: return "exp_decay:" + format_number(c_);
    case Kind::series: return "series(" + std::to_string(samples_.size()) + " samples)";
  }
  return "?";
}

BoundaryDrive make_drive(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string rest(colon == std::string_view::npos ? "" : spec.substr(colon + 1));

  auto read_series = [](const std::string& path) {
    const CsvTable table = read_csv(path);
    try {
      return BoundaryDrive::series({table.column("t"), table.column("value")});
    } catch (const InvalidInput& e) {
      throw FileError(path, e.what());
    }
  };

  if (name == "zero") return BoundaryDrive::zero();
  if (name == "csv") return read_series(rest);
  if (colon == std::string_view::npos && spec.ends_with(".csv")) return read_series(std::string(spec));

  double c = 1.0;
  if (!rest.empty()) {
    try {
      std::size_t used = 0;
      c = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception&) {
      throw InvalidInput("bad drive parameter in '" + std::string(spec) + "'");
    }
  }
  if (!std::isfinite(c)) throw InvalidInput("drive parameter must be finite");
  if (name == "step") return BoundaryDrive::step(c);
  if (name == "ramp") return BoundaryDrive::ramp(c);
  if (name == "exp_decay") return BoundaryDrive::exp_decay(c);
  throw InvalidInput("unknown drive form '" + std::string(name) + "'");
}

}  // namespace heatlab
