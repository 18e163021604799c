#include "sheetwave/curve.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sheetwave/errors.hpp"
#include "sheetwave/kernels.hpp"

namespace sheetwave {

CurveGeometry renormalize_curve(const SpectralField& theta, double period,
                                double h_min) {
  const Grid& grid = theta.grid;
  const int n = grid.size();
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<complex> e(n);
  for (int j = 0; j < n; ++j) e[j] = std::polar(1.0, theta[j]);
  ComplexField exp_i_theta(grid, std::move(e));
  const complex m = mean(exp_i_theta);
  const double mean_cos = m.real();
  const double mean_sin = m.imag();
  if (!(mean_cos > h_min)) {
    throw DomainError(DomainEvent::NotGraphlike,
                      "mean(cos theta) = " + std::to_string(mean_cos) +
                          " is not above h_min = " + std::to_string(h_min));
  }
  const double sigma = period / (two_pi * mean_cos);

  // int_0^alpha e^{i theta} = m alpha + (periodic antiderivative of the rest);
  // subtracting i alpha mean_sin leaves mean_cos * alpha as the secular part.
  const ComplexField wiggle = periodic_antiderivative(exp_i_theta);
  std::vector<complex> z(n), dz(n), t(n), nrm(n);
  for (int j = 0; j < n; ++j) {
    const double alpha = grid.node(j);
    z[j] = period * alpha / two_pi + sigma * wiggle[j];
    dz[j] = sigma * (exp_i_theta[j] - complex(0.0, mean_sin));
    t[j] = dz[j] / std::abs(dz[j]);
    nrm[j] = complex(0.0, 1.0) * t[j];
  }
  return CurveGeometry{ComplexField(grid, std::move(z)),
                       ComplexField(grid, std::move(dz)),
                       ComplexField(grid, std::move(t)),
                       ComplexField(grid, std::move(nrm)),
                       sigma,
                       period / mean_cos,
                       period,
                       mean_cos,
                       mean_sin};
}

SpectralField curvature(const SpectralField& theta, const CurveGeometry& geometry) {
  return (1.0 / geometry.sigma) * derivative(theta);
}

double chord_arc_infimum(const CurveGeometry& geometry) {
  return kernels::chord_arc_min(geometry.z.values, geometry.dz.values,
                                geometry.period);
}

SpectralField velocity_jump(const SpectralField& gamma1, double gamma_bar,
                            const CurveGeometry& geometry) {
  const double scale = 2.0 * std::numbers::pi / geometry.length;
  std::vector<double> v(gamma1.size());
  for (int j = 0; j < gamma1.size(); ++j) v[j] = scale * (gamma_bar + gamma1[j]);
  return SpectralField(gamma1.grid, std::move(v), gamma1.parity);
}

}  // namespace sheetwave
