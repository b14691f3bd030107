#include "heatlab/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "heatlab/error.hpp"
#include "heatlab/parallel.hpp"
#include "heatlab/spectrum.hpp"

namespace heatlab {

void ReconstructionConfig::validate() const {
  if (m < 3) throw InvalidInput("reconstruction needs m >= 3 nodes");
  if (!(alpha >= 0.0)) throw InvalidInput("alpha must be >= 0");
  if (!(misfit_tol > 0.0)) throw InvalidInput("misfit_tol must be > 0");
  if (!(fd_step > 0.0)) throw InvalidInput("fd_step must be > 0");
}

ConductivityProfile profile_from_log_nodes(std::span<const double> log_nodes) {
  std::vector<double> nodes(log_nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!std::isfinite(log_nodes[j])) throw InvalidInput("log-conductivity parameters must be finite");
    nodes[j] = std::exp(log_nodes[j]);
  }
  return ConductivityProfile::piecewise_linear(std::move(nodes));
}

std::vector<double> log_nodes_of(const ConductivityProfile& a, std::size_t m) {
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = std::log(a(static_cast<double>(j) / static_cast<double>(m - 1)));
  }
  return out;
}

TimeSeries observe_flux(const ConductivityProfile& a, const BoundaryDrive& f,
                        const SpaceTimeGrid& grid, FluxEnd end, const ForwardOptions& options) {
  const TemperatureField field = solve_forward(a, f, grid, options);
  return end == FluxEnd::right ? flux_right(field, a) : flux_left(field, a);
}

namespace {

void check_data(const TimeSeries& data, const SpaceTimeGrid& grid) {
  data.validate();
  if (data.size() != grid.nt() + 1) {
    throw InvalidInput("data must be sampled on the grid times (" + std::to_string(grid.nt() + 1) +
                       " samples, got " + std::to_string(data.size()) + ")");
  }
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (std::abs(data.t[k] - grid.t(k)) > 1e-9 * grid.t_final()) {
      throw InvalidInput("data time " + std::to_string(k) + " does not match the grid");
    }
  }
}

// Stacked residual whose squared norm is the misfit.
Eigen::VectorXd residual(std::span<const double> log_nodes, const TimeSeries& data,
                         const BoundaryDrive& f, const SpaceTimeGrid& grid,
                         const ReconstructionConfig& cfg) {
  const ConductivityProfile a = profile_from_log_nodes(log_nodes);
  const TimeSeries model = observe_flux(a, f, grid, cfg.data_end, cfg.forward);
  const std::size_t nt = grid.nt();
  const std::size_t m = log_nodes.size();
  Eigen::VectorXd r(nt + m - 2);
  const double w = std::sqrt(grid.dt());
  for (std::size_t k = 1; k <= nt; ++k) r[k - 1] = w * (model.y[k] - data.y[k]);
  const double wa = std::sqrt(cfg.alpha);
  for (std::size_t j = 1; j + 1 < m; ++j) {
    r[nt + j - 1] = wa * (std::exp(log_nodes[j - 1]) - 2.0 * std::exp(log_nodes[j]) +
                          std::exp(log_nodes[j + 1]));
  }
  return r;
}

}  // namespace

double misfit(std::span<const double> log_nodes, const TimeSeries& data, const BoundaryDrive& f,
              const SpaceTimeGrid& grid, const ReconstructionConfig& cfg) {
  cfg.validate();
  check_data(data, grid);
  if (log_nodes.size() != cfg.m) throw InvalidInput("parameter count differs from cfg.m");
  return residual(log_nodes, data, f, grid, cfg).squaredNorm();
}

ReconstructionResult reconstruct(const TimeSeries& data, const BoundaryDrive& f,
                                 const SpaceTimeGrid& grid, const ReconstructionConfig& cfg) {
  cfg.validate();
  check_data(data, grid);

  std::vector<double> params = log_nodes_of(cfg.init, cfg.m);
  Eigen::VectorXd r = residual(params, data, f, grid, cfg);
  double phi = r.squaredNorm();

  ReconstructionResult result;
  result.misfit_history.push_back(phi);

  auto finish = [&](bool converged, std::string reason) {
    result.log_nodes = params;
    result.profile = profile_from_log_nodes(params);
    result.final_misfit = phi;
    result.converged = converged;
    result.stop_reason = std::move(reason);
    return result;
  };

  if (phi <= cfg.misfit_tol) return finish(true, "misfit below tolerance");

  const std::size_t m = cfg.m;
  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    // Central-difference Jacobian, one column per parameter.
    Eigen::MatrixXd jac(r.size(), static_cast<Eigen::Index>(m));
    parallel_for(m, [&](std::size_t j) {
      std::vector<double> plus = params, minus = params;
      plus[j] += cfg.fd_step;
      minus[j] -= cfg.fd_step;
      jac.col(static_cast<Eigen::Index>(j)) =
          (residual(plus, data, f, grid, cfg) - residual(minus, data, f, grid, cfg)) /
          (2.0 * cfg.fd_step);
    });

    const Eigen::VectorXd gradient = jac.transpose() * r;
    if (gradient.lpNorm<Eigen::Infinity>() <= 1e-15 * std::max(1.0, phi)) {
      return finish(true, "gradient vanished");
    }
    Eigen::MatrixXd normal = jac.transpose() * jac;
    // Tiny diagonal shift keeps the solve defined when a node is unobservable.
    normal.diagonal().array() += 1e-12 * normal.diagonal().maxCoeff();
    const Eigen::VectorXd step = normal.ldlt().solve(-gradient);

    bool accepted = false;
    double t = 1.0;
    std::vector<double> trial(m);
    Eigen::VectorXd r_trial;
    double phi_trial = phi;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      for (std::size_t j = 0; j < m; ++j) trial[j] = params[j] + t * step[static_cast<Eigen::Index>(j)];
      try {
        r_trial = residual(trial, data, f, grid, cfg);
      } catch (const InvalidInput&) {
        continue;  // non-finite parameters: shorten the step
      }
      phi_trial = r_trial.squaredNorm();
      if (phi_trial < phi) {
        accepted = true;
        break;
      }
    }
    if (!accepted) return finish(false, "line search failed");

    const double decrease = phi - phi_trial;
    params = trial;
    r = r_trial;
    phi = phi_trial;
    result.misfit_history.push_back(phi);
    result.iterations = iter + 1;

    if (phi <= cfg.misfit_tol) return finish(true, "misfit below tolerance");
    if (decrease <= 1e-10 * result.misfit_history.front() && decrease <= 1e-8 * phi) {
      return finish(true, "stagnation");
    }
  }
  return finish(false, "iteration limit reached");
}

TimeSeries add_uniform_noise(const TimeSeries& data, double level, std::uint64_t seed) {
  double peak = 0.0;
  for (double v : data.y) peak = std::max(peak, std::abs(v));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TimeSeries noisy = data;
  for (double& v : noisy.y) v += level * peak * unit(rng);
  return noisy;
}

double discretization_floor(const ConductivityProfile& a, const BoundaryDrive& f,
                            const SpaceTimeGrid& grid, FluxEnd end, const ForwardOptions& options) {
  const TimeSeries coarse = observe_flux(a, f, grid, end, options);
  const TimeSeries fine = observe_flux(a, f, grid.refined(), end, options);
  double sum = 0.0;
  for (std::size_t k = 1; k <= grid.nt(); ++k) {
    const double d = coarse.y[k] - fine.y[2 * k];
    sum += d * d;
  }
  return sum * grid.dt();
}

double relative_l2_error(const ConductivityProfile& estimate, const ConductivityProfile& truth) {
  constexpr int n = 2000;
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    const double d = estimate(x) - truth(x);
    num += w * d * d;
    den += w * truth(x) * truth(x);
  }
  return std::sqrt(num / den);
}

SpectralSample drive_transform(const BoundaryDrive& f, std::span<const double> lambdas,
                               const SpaceTimeGrid& grid) {
  SpectralSample out;
  out.tag = SpectralTag::F;
  out.lambdas.assign(lambdas.begin(), lambdas.end());
  bool closed = true;
  for (double l : lambdas) {
    if (!(l > 0.0)) throw InvalidInput("lambda must be > 0");
    const auto v = f.laplace(l);
    if (!v) {
      closed = false;
      break;
    }
    out.values.push_back(*v);
  }
  if (closed) return out;

  TimeSeries samples;
  samples.t = grid.times();
  samples.y.resize(samples.t.size());
  for (std::size_t k = 0; k < samples.t.size(); ++k) samples.y[k] = f(samples.t[k]);
  return laplace_transform(samples, lambdas, TailModel::constant, SpectralTag::F);
}

AmbiguityReport ambiguity_experiment(const ConductivityProfile& a, const BoundaryDrive& f,
                                     const SpaceTimeGrid& grid, std::span<const double> lambdas,
                                     const ForwardOptions& options) {
  AmbiguityReport report;
  const ConductivityProfile mirrored = reflect(a);
  report.asymmetry = asymmetry(a);
  report.vacuous = report.asymmetry < kSymmetryThreshold;

  const TemperatureField u_a = solve_forward(a, f, grid, options);
  const TemperatureField u_r = solve_forward(mirrored, f, grid, options);
  const TimeSeries h_a = flux_left(u_a, a), h_r = flux_left(u_r, mirrored);
  const TimeSeries g_a = flux_right(u_a, a), g_r = flux_right(u_r, mirrored);
  for (std::size_t k = 0; k < h_a.size(); ++k) {
    report.max_left_flux_difference =
        std::max(report.max_left_flux_difference, std::abs(h_a.y[k] - h_r.y[k]));
    report.max_right_flux_difference =
        std::max(report.max_right_flux_difference, std::abs(g_a.y[k] - g_r.y[k]));
  }

  const SpectralSample drive = drive_transform(f, lambdas, grid);
  report.H_original = left_flux_transform(a, drive);
  report.H_reflected = left_flux_transform(mirrored, drive);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double ha = report.H_original.values[i];
    const double hr = report.H_reflected.values[i];
    const double rel = ha == 0.0 ? std::abs(hr) : std::abs(ha - hr) / std::abs(ha);
    report.max_H_relative_difference = std::max(report.max_H_relative_difference, rel);
  }
  return report;
}

}  // namespace heatlab
