#include "heatlab/sl_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "heatlab/error.hpp"

namespace heatlab {

namespace odeint = boost::numeric::odeint;

namespace {

template <std::size_t N>
using State = std::array<double, N>;

std::vector<double> uniform_grid(std::size_t points) {
  if (points < 2) throw InvalidInput("output grid needs at least 2 points");
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i) {
    x[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return x;
}

// Integrates `system` from times.front() and records the state at each time.
// Steps also end at every break in (times.front(), times.back()) so that no
// step straddles a kink of the coefficient.
template <std::size_t N, class System>
std::vector<State<N>> integrate_on(System system, State<N> start, const std::vector<double>& times,
                                   double tolerance, const std::vector<double>& breaks = {}) {
  auto stepper = odeint::make_controlled(tolerance, tolerance,
                                         odeint::runge_kutta_fehlberg78<State<N>>());
  std::vector<double> stops = times;
  std::vector<char> wanted(times.size(), 1);
  for (double b : breaks) {
    if (b <= times.front() || b >= times.back()) continue;
    auto it = std::lower_bound(stops.begin(), stops.end(), b);
    if (*it == b) continue;
    wanted.insert(wanted.begin() + (it - stops.begin()), 0);
    stops.insert(it, b);
  }
  std::vector<State<N>> out;
  out.reserve(times.size());
  const double first_step = (times.back() - times.front()) / 256.0;
  std::size_t k = 0;
  odeint::integrate_times(stepper, system, start, stops.begin(), stops.end(), first_step,
                          [&](const State<N>& s, double) {
                            if (wanted[k++]) out.push_back(s);
                          });
  return out;
}

void check_lambda(const ConductivityProfile& a, double lambda) {
  if (!std::isfinite(lambda)) throw InvalidInput("lambda must be finite");
  if (lambda > 0.0) {
    const double limit = lambda_limit(a);
    if (lambda > limit) {
      throw InvalidInput("lambda=" + std::to_string(lambda) +
                         " exceeds the overflow guard sqrt(lambda)*xi(1) <= 600 (limit " +
                         std::to_string(limit) + ")");
    }
  }
}

}  // namespace

double lambda_limit(const ConductivityProfile& a) {
  const double l = 600.0 / liouville_length(a);
  return l * l;
}

SLTrajectory solve_dirichlet_seed(const ConductivityProfile& a, double lambda,
                                  const SLOptions& options) {
  check_lambda(a, lambda);
  SLTrajectory tr;
  tr.lambda = lambda;
  tr.x = uniform_grid(options.points);

  // state = (v, m) with m = a v'
  auto system = [&](const State<2>& s, State<2>& ds, double x) {
    ds[0] = s[1] / a(x);
    ds[1] = lambda * s[0];
  };
  const auto states =
      integrate_on<2>(system, {0.0, 1.0}, tr.x, options.tolerance, a.breakpoints());

  const std::size_t n = tr.x.size();
  tr.value.resize(n);
  tr.derivative.resize(n);
  tr.conjugate.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    tr.value[i] = states[i][0];
    tr.conjugate[i] = states[i][1];
    tr.derivative[i] = states[i][1] / a(tr.x[i]);
  }
  return tr;
}

SLTrajectory solve_w_ivp(const ConductivityProfile& a, double lambda, double w0, double dw0,
                         const SLOptions& options) {
  check_lambda(a, lambda);
  SLTrajectory tr;
  tr.lambda = lambda;
  tr.x = uniform_grid(options.points);

  auto system = [&](const State<2>& s, State<2>& ds, double x) {
    ds[0] = s[1];
    ds[1] = lambda * s[0] / a(x);
  };
  const auto states =
      integrate_on<2>(system, {w0, dw0}, tr.x, options.tolerance, a.breakpoints());

  const std::size_t n = tr.x.size();
  tr.value.resize(n);
  tr.derivative.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    tr.value[i] = states[i][0];
    tr.derivative[i] = states[i][1];
  }
  tr.conjugate = tr.derivative;
  return tr;
}

SLTrajectory solve_w(const ConductivityProfile& a, double lambda, const SLOptions& options) {
  return solve_w_ivp(a, lambda, 1.0, 0.0, options);
}

ThetaEndpoint theta(const ConductivityProfile& a, double lambda, double tolerance) {
  check_lambda(a, lambda);
  auto system = [&](const State<2>& s, State<2>& ds, double x) {
    ds[0] = s[1];
    ds[1] = lambda * s[0] / a(x);
  };
  State<2> s{1.0, 0.0};
  auto stepper = odeint::make_controlled(tolerance, tolerance,
                                         odeint::runge_kutta_fehlberg78<State<2>>());
  const auto breaks = a.breakpoints();
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    const double lo = breaks[j - 1], hi = breaks[j];
    odeint::integrate_adaptive(stepper, system, s, lo, hi, std::min(hi - lo, 1.0 / 256.0));
  }
  return {s[0], s[1]};
}

ResidualReport verify_lemma_der(const ConductivityProfile& a, double lambda,
                                const SLOptions& options) {
  // w on an 8x finer grid so composite Simpson is far below the ODE tolerance.
  constexpr std::size_t kRefine = 8;
  const std::size_t coarse = options.points;
  SLOptions fine_opts = options;
  fine_opts.points = kRefine * (coarse - 1) + 1;
  const SLTrajectory w = solve_w(a, lambda, fine_opts);

  const std::size_t nf = w.x.size();
  std::vector<double> integrand(nf);
  for (std::size_t i = 0; i < nf; ++i) integrand[i] = w.value[i] / a(w.x[i]);

  const double h = w.x[1] - w.x[0];
  std::vector<double> v_tilde(coarse, 0.0);
  double running = 0.0;
  for (std::size_t j = 2; j < nf; j += 2) {
    running += h / 3.0 * (integrand[j - 2] + 4.0 * integrand[j - 1] + integrand[j]);
    if (j % kRefine == 0) v_tilde[j / kRefine] = running;
  }

  const SLTrajectory v = solve_dirichlet_seed(a, lambda, options);
  // a(0) v_tilde'(0) = w(0) while the seed has (a v')(0) = conjugate[0].
  const double scale = w.value[0] / v.conjugate[0];

  ResidualReport report;
  for (std::size_t i = 0; i < coarse; ++i) {
    report.residual = std::max(report.residual, std::abs(v_tilde[i] - scale * v.value[i]));
    report.reference = std::max(report.reference, std::abs(scale * v.value[i]));
  }
  return report;
}

double liouville_potential(const ConductivityProfile& a, double x, PotentialFormula formula) {
  const double av = a(x);
  const double d1 = a.derivative(x);
  const double d2 = a.second_derivative(x);
  const double weight = formula == PotentialFormula::derived ? 1.0 / av : 1.0 / std::sqrt(av);
  return 3.0 / 16.0 * weight * d1 * d1 - 0.25 * d2;
}

LiouvilleData liouville_map(const ConductivityProfile& a, std::size_t points,
                            PotentialFormula formula) {
  LiouvilleData data;
  data.x = uniform_grid(points);
  data.xi.resize(points);
  data.q.resize(points);
  auto inv_sqrt = [&](double t) { return 1.0 / std::sqrt(a(t)); };
  data.xi[0] = 0.0;
  for (std::size_t i = 1; i < points; ++i) {
    data.xi[i] = data.xi[i - 1] + integrate_over(a, inv_sqrt, data.x[i - 1], data.x[i]);
  }
  for (std::size_t i = 0; i < points; ++i) data.q[i] = liouville_potential(a, data.x[i], formula);
  data.length = data.xi.back();
  data.h = 0.25 * a.derivative(0.0) / std::sqrt(a(0.0));
  return data;
}

LiouvilleReport verify_liouville(const ConductivityProfile& a, double lambda,
                                 PotentialFormula formula, const SLOptions& options) {
  const LiouvilleData map = liouville_map(a, options.points, formula);
  const SLTrajectory w = solve_w(a, lambda, options);

  // state = (x, z, dz/dxi) as functions of xi
  auto system = [&](const State<3>& s, State<3>& ds, double) {
    ds[0] = std::sqrt(a(s[0]));
    ds[1] = s[2];
    ds[2] = (liouville_potential(a, s[0], formula) + lambda) * s[1];
  };
  const double z0 = w.value[0] / std::pow(a(0.0), 0.25);
  const auto states =
      integrate_on<3>(system, {0.0, z0, -map.h * z0}, map.xi, options.tolerance);

  LiouvilleReport report;
  for (std::size_t i = 0; i < map.x.size(); ++i) {
    const double w_back = std::pow(a(map.x[i]), 0.25) * states[i][1];
    report.residual = std::max(report.residual, std::abs(w_back - w.value[i]));
    report.reference = std::max(report.reference, std::abs(w.value[i]));
    report.map_residual = std::max(report.map_residual, std::abs(states[i][0] - map.x[i]));
  }
  return report;
}

}  // namespace heatlab
