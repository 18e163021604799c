#pragma once

#include "sheetwave/spectral.hpp"

namespace sheetwave {

/// Default lower bound on mean(cos theta) before a curve counts as leaving the
/// graph-like set (its length per period diverges as the mean goes to zero).
inline constexpr double kDefaultHMin = 1e-3;

/// Curve rebuilt from a tangent angle with the period M enforced:
///   Z(alpha) = sigma * (int_0^alpha e^{i theta} - i alpha mean(sin theta)),
///   sigma = M / (2 pi mean(cos theta)).
/// `z` holds Z at the nodes; Z(alpha + 2 pi) = Z(alpha) + M.
struct CurveGeometry {
  ComplexField z;
  ComplexField dz;
  ComplexField tangent;
  ComplexField normal;
  double sigma;
  double length;  // M / mean(cos theta)
  double period;
  double mean_cos;
  double mean_sin;

  /// Z at node j shifted by `wraps` periods in the parameter.
  complex z_at(int j, int wraps) const { return z[j] + double(wraps) * period; }
};

/// Throws DomainError(NotGraphlike) when mean(cos theta) <= h_min.
CurveGeometry renormalize_curve(const SpectralField& theta, double period,
                                double h_min = kDefaultHMin);

/// theta_alpha / sigma.
SpectralField curvature(const SpectralField& theta, const CurveGeometry& geometry);

/// Infimum of |Z(a') - Z(a)| / |a' - a| over node pairs (with one periodic
/// image either side) and the diagonal limits |Z_alpha|.
double chord_arc_infimum(const CurveGeometry& geometry);

/// Tangential velocity jump j = 2 pi (gamma_bar + gamma_1) / L.
SpectralField velocity_jump(const SpectralField& gamma1, double gamma_bar,
                            const CurveGeometry& geometry);

}  // namespace sheetwave
