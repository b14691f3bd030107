#include "heatlab/laplace.hpp"

#include <cmath>

#include "heatlab/error.hpp"

namespace heatlab {

std::string to_string(SpectralTag tag) {
  switch (tag) {
    case SpectralTag::F: return "F";
    case SpectralTag::G: return "G";
    case SpectralTag::H: return "H";
    case SpectralTag::theta1: return "theta1";
    case SpectralTag::dtheta1: return "dtheta1";
  }
  return "?";
}

void SpectralSample::validate() const {
  if (lambdas.size() != values.size()) throw InvalidInput("spectral sample: length mismatch");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw InvalidInput("spectral sample: lambda must be > 0");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw InvalidInput("spectral sample: lambdas must be strictly increasing");
    }
  }
}

namespace {

// Weights of the two endpoint values of a linear segment of unit length
// against exp(-z tau), tau in [0, 1]:
//   E0 = int exp(-z tau),  E1 = int tau exp(-z tau),  weights (E0 - E1, E1).
void segment_weights(double z, double& w_left, double& w_right) {
  double e0, e1;
  if (std::abs(z) < 1e-3) {
    const double z2 = z * z;
    e0 = 1.0 - z / 2.0 + z2 / 6.0 - z2 * z / 24.0 + z2 * z2 / 120.0;
    e1 = 0.5 - z / 3.0 + z2 / 8.0 - z2 * z / 30.0 + z2 * z2 / 144.0;
  } else {
    const double em1 = -std::expm1(-z);  // 1 - exp(-z)
    e0 = em1 / z;
    e1 = (em1 - z * std::exp(-z)) / (z * z);
  }
  w_left = e0 - e1;
  w_right = e1;
}

}  // namespace

SpectralSample laplace_transform(const TimeSeries& series, std::span<const double> lambdas,
                                 TailModel tail, SpectralTag tag) {
  series.validate();
  SpectralSample out;
  out.tag = tag;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  out.values.reserve(lambdas.size());

  const double t_end = series.t.back();
  for (double lambda : lambdas) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw InvalidInput("Laplace transform needs lambda > 0, got " + std::to_string(lambda));
    }
    if (lambda * t_end < 5.0) out.truncation_warning = true;

    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
      const double h = series.t[k + 1] - series.t[k];
      if (h <= 0.0) continue;
      double wl, wr;
      segment_weights(lambda * h, wl, wr);
      sum += std::exp(-lambda * series.t[k]) * h * (wl * series.y[k] + wr * series.y[k + 1]);
    }
    if (tail == TailModel::constant) sum += series.y.back() * std::exp(-lambda * t_end) / lambda;
    out.values.push_back(sum);
  }
  return out;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw InvalidInput("log_spaced needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.back() = hi;
  return out;
}

std::vector<double> default_lambda_grid() { return log_spaced(0.25, 25.0, 40); }

}  // namespace heatlab
