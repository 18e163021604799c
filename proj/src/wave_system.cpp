#include "sheetwave/wave_system.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sheetwave/birkhoff_rott.hpp"
#include "sheetwave/errors.hpp"

namespace sheetwave {

namespace {

constexpr double pi = std::numbers::pi;

SpectralField total_strength(const WaveState& state, double gamma_bar) {
  std::vector<double> v(state.gamma1.values);
  for (double& x : v) x += gamma_bar;
  return SpectralField(state.gamma1.grid, std::move(v), state.gamma1.parity);
}

template <typename Fn>
SpectralField pointwise(const SpectralField& f, Fn fn) {
  std::vector<double> v(f.size());
  for (int j = 0; j < f.size(); ++j) v[j] = fn(f[j]);
  return SpectralField(f.grid, std::move(v));
}

// c cos(theta) - Re(B gamma T), with the tangential component taken from the
// smooth remainder K only.
SpectralField relative_tangential_speed(const WaveState& state,
                                        const CurveGeometry& geometry,
                                        const SpectralField& gamma) {
  const ComplexField k = evaluate_K(geometry, gamma);
  std::vector<double> q(state.theta.size());
  for (int j = 0; j < state.theta.size(); ++j) {
    q[j] = state.c * std::cos(state.theta[j]) -
           (k[j] * geometry.tangent[j]).real();
  }
  return SpectralField(state.theta.grid, std::move(q), Parity::even);
}

Parity symmetric_or_none(const WaveState& state, Parity when_symmetric) {
  return state.theta.parity == Parity::odd && state.gamma1.parity == Parity::even
             ? when_symmetric
             : Parity::none;
}

SpectralField gamma_from_theta_map(const SpectralField& big_theta,
                                   const WaveState& state,
                                   const PhysicalParameters& params,
                                   double h_min) {
  const CurveGeometry inner = renormalize_curve(big_theta, params.period, h_min);
  const SpectralField gamma = total_strength(state, params.gamma_bar);
  ComplexField k = ComplexField::zeros(big_theta.grid);
  try {
    k = evaluate_K(inner, gamma);
  } catch (const DomainError& e) {
    if (e.event() != DomainEvent::SelfIntersecting) throw;
    throw DomainError(DomainEvent::InnerCurveSelfIntersecting,
                      std::string("Theta-curve: ") + e.what());
  }
  std::vector<double> g(big_theta.size());
  for (int j = 0; j < big_theta.size(); ++j) {
    const double speed = std::abs(inner.dz[j]);
    g[j] = speed * (k[j] * inner.normal[j]).real() +
           state.c * speed * std::sin(big_theta[j]);
  }
  SpectralField inside(big_theta.grid, std::move(g),
                       symmetric_or_none(state, Parity::odd));
  return 2.0 * hilbert(inside);
}

}  // namespace

void PhysicalParameters::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(period > 0.0)) throw std::invalid_argument("period M must be positive");
  if (!(std::abs(atwood) <= 1.0)) {
    throw std::invalid_argument("Atwood number must lie in [-1, 1]");
  }
  if (!std::isfinite(gravity) || !std::isfinite(gamma_bar)) {
    throw std::invalid_argument("g and gamma_bar must be finite");
  }
}

double atwood_from_densities(double rho1, double rho2) {
  if (rho1 < 0.0 || rho2 < 0.0) {
    throw std::invalid_argument("densities must be non-negative");
  }
  if (rho1 + rho2 == 0.0) {
    throw BothDensitiesZero("densities rho1 and rho2 are both zero");
  }
  return (rho1 - rho2) / (rho1 + rho2);
}

WaveState WaveState::flat(const Grid& grid, double c) {
  return WaveState{SpectralField::zeros(grid, Parity::odd),
                   SpectralField::zeros(grid, Parity::even), c};
}

void validate(const WaveState& state, double tolerance) {
  if (!(state.theta.grid == state.gamma1.grid)) {
    throw std::invalid_argument("theta and gamma_1 live on different grids");
  }
  for (double v : state.theta.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("theta is not finite");
  }
  for (double v : state.gamma1.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("gamma_1 is not finite");
  }
  if (!std::isfinite(state.c)) throw std::invalid_argument("speed is not finite");
  if (!has_parity(state.theta, Parity::odd, tolerance)) {
    throw std::invalid_argument("theta is not odd");
  }
  if (!has_parity(state.gamma1, Parity::even, tolerance)) {
    throw std::invalid_argument("gamma_1 is not even");
  }
  if (std::abs(mean(state.gamma1)) > tolerance * std::max(1.0, sup_norm(state.gamma1))) {
    throw std::invalid_argument("gamma_1 is not mean-zero");
  }
}

SpectralField phi_tilde(const WaveState& state, const PhysicalParameters& params,
                        double h_min) {
  const double M = params.period;
  const double A = params.atwood;
  const double tau = params.tau;
  const CurveGeometry geometry = renormalize_curve(state.theta, M, h_min);
  const SpectralField gamma = total_strength(state, params.gamma_bar);
  const SpectralField q = relative_tangential_speed(state, geometry, gamma);

  const SpectralField sin_theta = pointwise(state.theta, [](double x) { return std::sin(x); });
  std::vector<double> sin_centered(sin_theta.values);
  for (double& s : sin_centered) s -= geometry.mean_sin;

  const SpectralField flux = derivative(q * gamma);
  const SpectralField gamma_sq = derivative(gamma * gamma);
  const SpectralField q_sq = derivative(q * q);

  const double c_gamma_sq = pi * geometry.mean_cos / (2.0 * M);
  const double c_gravity = params.gravity * M / (pi * geometry.mean_cos);
  const double c_q_sq = M / (2.0 * pi * geometry.mean_cos);

  std::vector<double> phi(state.theta.size());
  for (int j = 0; j < state.theta.size(); ++j) {
    phi[j] = flux[j] / tau -
             (A / tau) * (c_gamma_sq * gamma_sq[j] + c_gravity * sin_centered[j] +
                          c_q_sq * q_sq[j]);
  }
  return SpectralField(state.theta.grid, std::move(phi),
                       symmetric_or_none(state, Parity::odd));
}

SpectralField theta_map(const WaveState& state, const PhysicalParameters& params,
                        double h_min) {
  return -1.0 * inverse_second_derivative(phi_tilde(state, params, h_min));
}

SpectralField gamma_map(const WaveState& state, const PhysicalParameters& params,
                        double h_min) {
  return gamma_from_theta_map(theta_map(state, params, h_min), state, params, h_min);
}

FixedPointMaps fixed_point_maps(const WaveState& state,
                                const PhysicalParameters& params, double h_min) {
  SpectralField big_theta = theta_map(state, params, h_min);
  SpectralField big_gamma = gamma_from_theta_map(big_theta, state, params, h_min);
  return {std::move(big_theta), std::move(big_gamma)};
}

Residual residual(const WaveState& state, const PhysicalParameters& params,
                  double h_min) {
  const FixedPointMaps maps = fixed_point_maps(state, params, h_min);
  SpectralField r_theta = project_parity(state.theta - maps.theta_map, Parity::odd);
  SpectralField r_gamma = project_mean_zero(
      project_parity(state.gamma1 - maps.gamma_map, Parity::even));
  const double a = h1_norm(r_theta);
  const double b = h1_norm(r_gamma);
  return {std::move(r_theta), std::move(r_gamma), std::sqrt(a * a + b * b)};
}

SpectralField kinematic_residual(const WaveState& state,
                                 const PhysicalParameters& params, double h_min) {
  const CurveGeometry geometry = renormalize_curve(state.theta, params.period, h_min);
  const ComplexField b = evaluate_B(geometry, total_strength(state, params.gamma_bar));
  std::vector<double> out(state.theta.size());
  for (int j = 0; j < state.theta.size(); ++j) {
    out[j] = (b[j] * geometry.normal[j]).real() + state.c * std::sin(state.theta[j]);
  }
  return SpectralField(state.theta.grid, std::move(out),
                       symmetric_or_none(state, Parity::odd));
}

}  // namespace sheetwave
