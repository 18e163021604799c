#pragma once

#include <utility>

#include "sheetwave/curve.hpp"

namespace sheetwave {

/// B[w]gamma split into its Hilbert part (1 / (2 i w_alpha)) H gamma and the
/// smoother remainder K[w]gamma.
struct KernelEvaluation {
  ComplexField b_values;
  ComplexField k_values;
  ComplexField hilbert_part;
};

/// Node pairs closer than this fraction of the period make the cotangent
/// kernel overflow; evaluation refuses them.
inline constexpr double kSelfIntersectionFloor = 1e-12;

/// Off-curve points closer than this fraction of the period to a node are
/// rejected.
inline constexpr double kOffCurveFloor = 1e-6;

/// Periodic Birkhoff-Rott integral
///   (1 / (2 i M)) PV int_0^{2pi} gamma(a') cot(pi (w(a) - w(a')) / M) da'
/// by the alternating-point trapezoid rule.  `gamma_total` includes the mean.
/// Throws DomainError(SelfIntersecting).
ComplexField evaluate_B(const CurveGeometry& geometry,
                        const SpectralField& gamma_total);

/// K[w]gamma = B[w]gamma - (1 / (2 i w_alpha)) H gamma, by subtraction.
ComplexField evaluate_K(const CurveGeometry& geometry,
                        const SpectralField& gamma_total);

/// All three pieces from a single kernel sum.
KernelEvaluation evaluate_kernel(const CurveGeometry& geometry,
                                 const SpectralField& gamma_total);

/// (Re(W N), Re(W T)) pointwise.
std::pair<SpectralField, SpectralField> normal_tangential_components(
    const CurveGeometry& geometry, const ComplexField& W);

/// Fluid velocity u(p) = conj((1 / (2 i M)) int gamma(a') cot(pi (p - w(a')) / M) da')
/// by the plain trapezoid rule.  Throws DomainError(TooCloseToCurve).
complex evaluate_velocity_offcurve(const CurveGeometry& geometry,
                                   const SpectralField& gamma_total,
                                   complex point);

}  // namespace sheetwave
