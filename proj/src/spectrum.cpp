#include "heatlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "heatlab/parallel.hpp"
#include "heatlab/sl_solver.hpp"

namespace heatlab {

SpectrumShortfall::SpectrumShortfall(std::size_t requested, NeumannSpectrum partial)
    : Error("Neumann spectrum: found " + std::to_string(partial.eigenvalues.size()) + " of " +
            std::to_string(requested) + " requested eigenvalues in the scan window"),
      partial_(std::move(partial)) {}

namespace {

struct Bracket {
  double lo, hi;
  double f_lo;
};

double bisect(const ConductivityProfile& a, Bracket b, const SpectrumOptions& options) {
  auto f = [&](double k) { return theta(a, -k * k, options.ode_tolerance).dtheta1; };
  double lo = b.lo, hi = b.hi, f_lo = b.f_lo;
  while (2.0 * hi * (hi - lo) > options.lambda_tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at machine resolution
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

NeumannSpectrum neumann_spectrum(const ConductivityProfile& a, std::size_t n_max,
                                 const SpectrumOptions& options) {
  if (n_max < 1) throw InvalidInput("n_max must be >= 1");

  const double length = liouville_length(a);
  const double gap = std::numbers::pi / length;
  const double step = gap / options.scan_divisions;
  const double window = (static_cast<double>(n_max) + options.window_margin) * gap;
  const std::size_t wanted = n_max - 1;

  // Scan samples, evaluated independently.
  const auto samples = static_cast<std::size_t>(std::ceil(window / step));
  std::vector<double> ks(samples), fs(samples);
  for (std::size_t i = 0; i < samples; ++i) ks[i] = step * static_cast<double>(i + 1);
  parallel_for(samples, [&](std::size_t i) {
    fs[i] = theta(a, -ks[i] * ks[i], options.ode_tolerance).dtheta1;
  });

  std::vector<Bracket> brackets;
  for (std::size_t i = 0; i + 1 < samples && brackets.size() < wanted; ++i) {
    if (fs[i] == 0.0) {
      brackets.push_back({ks[i], ks[i], 0.0});
    } else if ((fs[i] < 0.0) != (fs[i + 1] < 0.0) && fs[i + 1] != 0.0) {
      brackets.push_back({ks[i], ks[i + 1], fs[i]});
    }
  }

  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), [&](std::size_t j) {
    roots[j] = brackets[j].lo == brackets[j].hi ? brackets[j].lo : bisect(a, brackets[j], options);
  });

  NeumannSpectrum spectrum;
  spectrum.requested = n_max;
  spectrum.eigenvalues.push_back(0.0);
  spectrum.wavenumbers.push_back(0.0);
  for (double k : roots) {
    spectrum.eigenvalues.push_back(-k * k);
    spectrum.wavenumbers.push_back(k);
  }
  for (std::size_t j = 1; j < spectrum.wavenumbers.size(); ++j) {
    const double ratio = (spectrum.wavenumbers[j] - spectrum.wavenumbers[j - 1]) / gap;
    if (ratio < 0.5 || ratio > 2.0) {
      std::ostringstream msg;
      msg << "root gap k_" << j << " - k_" << j - 1 << " is " << ratio
          << " x pi/xi(1), outside [0.5, 2]";
      spectrum.flags.push_back(msg.str());
    }
  }
  if (spectrum.eigenvalues.size() < n_max) throw SpectrumShortfall(n_max, std::move(spectrum));
  return spectrum;
}

double SymmetryReport::max_difference() const {
  return differences.empty() ? 0.0 : *std::max_element(differences.begin(), differences.end());
}

SymmetryReport spectrum_symmetry_report(const ConductivityProfile& a, std::size_t n_max,
                                        const SpectrumOptions& options) {
  SymmetryReport report;
  report.original = neumann_spectrum(a, n_max, options);
  report.reflected = neumann_spectrum(reflect(a), n_max, options);
  for (std::size_t j = 0; j < n_max; ++j) {
    report.differences.push_back(
        std::abs(report.original.eigenvalues[j] - report.reflected.eigenvalues[j]));
  }
  return report;
}


SpectralSample theta_samples(const ConductivityProfile& a, std::span<const double> lambdas,
                             SpectralTag tag) {
  if (tag != SpectralTag::theta1 && tag != SpectralTag::dtheta1) {
    throw InvalidInput("theta_samples: tag must be theta1 or dtheta1");
  }
  SpectralSample out;
  out.tag = tag;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  out.values.resize(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    const ThetaEndpoint end = theta(a, lambdas[i]);
    out.values[i] = tag == SpectralTag::theta1 ? end.theta1 : end.dtheta1;
  });
  out.validate();
  return out;
}

SpectralSample left_flux_transform(const ConductivityProfile& a, const SpectralSample& drive) {
  drive.validate();
  const SpectralSample dtheta = theta_samples(a, drive.lambdas, SpectralTag::dtheta1);
  SpectralSample out;
  out.tag = SpectralTag::H;
  out.lambdas = drive.lambdas;
  out.truncation_warning = drive.truncation_warning;
  out.values.resize(drive.lambdas.size());
  for (std::size_t i = 0; i < drive.lambdas.size(); ++i) {
    out.values[i] = drive.lambdas[i] * drive.values[i] / dtheta.values[i];
  }
  return out;
}

}  // namespace heatlab
