#include "sheetwave/birkhoff_rott.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sheetwave/errors.hpp"
#include "sheetwave/kernels.hpp"

namespace sheetwave {

namespace {

ComplexField kernel_sum(const CurveGeometry& geometry,
                        const SpectralField& gamma_total) {
  auto out = ComplexField::zeros(geometry.z.grid);
  const auto result = kernels::birkhoff_rott_sum(
      geometry.z.values, gamma_total.values, geometry.period, out.values);
  if (result.min_separation < kSelfIntersectionFloor * geometry.period) {
    throw DomainError(DomainEvent::SelfIntersecting,
                      "curve nodes coincide (separation " +
                          std::to_string(result.min_separation) + ")");
  }
  return out;
}

}  // namespace

ComplexField evaluate_B(const CurveGeometry& geometry,
                        const SpectralField& gamma_total) {
  return kernel_sum(geometry, gamma_total);
}

KernelEvaluation evaluate_kernel(const CurveGeometry& geometry,
                                 const SpectralField& gamma_total) {
  ComplexField b = kernel_sum(geometry, gamma_total);
  const SpectralField h = hilbert(gamma_total);
  const int n = b.size();
  std::vector<complex> hp(n), kv(n);
  for (int j = 0; j < n; ++j) {
    hp[j] = h[j] / (complex(0.0, 2.0) * geometry.dz[j]);
    kv[j] = b[j] - hp[j];
  }
  const Grid& grid = b.grid;
  return {std::move(b), ComplexField(grid, std::move(kv)),
          ComplexField(grid, std::move(hp))};
}

ComplexField evaluate_K(const CurveGeometry& geometry,
                        const SpectralField& gamma_total) {
  return evaluate_kernel(geometry, gamma_total).k_values;
}

std::pair<SpectralField, SpectralField> normal_tangential_components(
    const CurveGeometry& geometry, const ComplexField& W) {
  const int n = W.size();
  std::vector<double> wn(n), wt(n);
  for (int j = 0; j < n; ++j) {
    wn[j] = (W[j] * geometry.normal[j]).real();
    wt[j] = (W[j] * geometry.tangent[j]).real();
  }
  return {SpectralField(W.grid, std::move(wn)),
          SpectralField(W.grid, std::move(wt))};
}

complex evaluate_velocity_offcurve(const CurveGeometry& geometry,
                                   const SpectralField& gamma_total,
                                   complex point) {
  const double period = geometry.period;
  const int n = geometry.z.size();
  double nearest = std::numeric_limits<double>::infinity();
  for (int l = 0; l < n; ++l) {
    // distance to the node and its neighbouring periodic images
    const double dx = point.real() - geometry.z[l].real();
    const double shift = period * std::round(dx / period);
    nearest = std::min(nearest, std::abs(point - geometry.z[l] - shift));
  }
  if (nearest < kOffCurveFloor * period) {
    throw DomainError(DomainEvent::TooCloseToCurve,
                      "evaluation point within " + std::to_string(nearest) +
                          " of the sheet");
  }
  const double h = 2.0 * std::numbers::pi / n;
  const double scale = std::numbers::pi / period;
  complex acc{};
  for (int l = 0; l < n; ++l) {
    acc += gamma_total[l] * kernels::stable_cot(scale * (point - geometry.z[l]));
  }
  const complex w_conj = h * acc / complex(0.0, 2.0 * period);
  return std::conj(w_conj);
}

}  // namespace sheetwave
