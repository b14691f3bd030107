#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatlab/error.hpp"
#include "heatlab/laplace.hpp"
#include "heatlab/profile.hpp"

namespace heatlab {

/// Neumann eigenvalues of theta'' = lambda theta / a, theta'(0) = theta'(1) = 0.
struct NeumannSpectrum {
  std::vector<double> eigenvalues;  // 0 = lambda_0 > lambda_1 > ...
  std::vector<double> wavenumbers;  // k_j with lambda_j = -k_j^2
  std::size_t requested = 0;
  // Root gaps outside [0.5, 2] * pi / xi(1); reported, not fatal.
  std::vector<std::string> flags;
};

/// Raised when the scan window holds fewer roots than requested.
class SpectrumShortfall : public Error {
 public:
  SpectrumShortfall(std::size_t requested, NeumannSpectrum partial);
  const NeumannSpectrum& partial() const { return partial_; }

 private:
  NeumannSpectrum partial_;
};

struct SpectrumOptions {
  double lambda_tolerance = 1e-10;  // bisection stops once |delta lambda| <= this
  double ode_tolerance = 1e-13;
  // Scan window is (n_max + window_margin) * pi / xi(1).
  double window_margin = 2.0;
  // Scan step is pi / xi(1) / scan_divisions.
  double scan_divisions = 8.0;
};

/**
 * First n_max Neumann eigenvalues, lambda_0 = 0 included.
 *
 * Works in k with lambda = -k^2: scans k -> theta'(1, -k^2) on a uniform grid
 * finer than the asymptotic root gap pi / xi(1), brackets sign changes and
 * bisects each bracket. Throws SpectrumShortfall if the window is exhausted.
 */
NeumannSpectrum neumann_spectrum(const ConductivityProfile& a, std::size_t n_max,
                                 const SpectrumOptions& options = {});

struct SymmetryReport {
  NeumannSpectrum original;
  NeumannSpectrum reflected;
  std::vector<double> differences;  // |lambda_j(a) - lambda_j(reflect(a))|

  double max_difference() const;
};

SymmetryReport spectrum_symmetry_report(const ConductivityProfile& a, std::size_t n_max,
                                        const SpectrumOptions& options = {});


/// theta(1, lambda) or theta'(1, lambda) on a lambda grid (tag theta1 / dtheta1).
SpectralSample theta_samples(const ConductivityProfile& a, std::span<const double> lambdas,
                             SpectralTag tag = SpectralTag::dtheta1);

/// Left-end flux transform H(lambda) = lambda F(lambda) / theta'(1, lambda)
/// from the drive transform F.
SpectralSample left_flux_transform(const ConductivityProfile& a, const SpectralSample& drive);

}  // namespace heatlab
