#pragma once

// O(n^2) node-pair loops.  Each kernel has an OpenMP version parallelized
// over output nodes and a serial reference kept for testing and benchmarks.
// Both use the same per-node summation order, so their results are
// bit-identical.

#include <complex>
#include <span>

namespace sheetwave::kernels {

using complex = std::complex<double>;

/// cot(z) evaluated without overflow for large |Im z|; tends to -i (+i) as
/// Im z -> +inf (-inf).
complex stable_cot(complex z);

struct CotSumResult {
  /// Smallest |z_j - z_l - mM| over distinct node pairs, m in {-1, 0, 1}.
  double min_separation;
};

/// Alternating-point trapezoid sum for the periodic Birkhoff-Rott integral:
///   out_j = (1 / (2 i M)) * sum_{l - j odd} 2h * gamma_l * cot(pi (z_j - z_l) / M)
/// with h = 2pi / n.
CotSumResult birkhoff_rott_sum(std::span<const complex> z,
                               std::span<const double> gamma, double period,
                               std::span<complex> out);
CotSumResult birkhoff_rott_sum_serial(std::span<const complex> z,
                                      std::span<const double> gamma,
                                      double period, std::span<complex> out);

/// min over j, l, m in {-1, 0, 1}, (l, m) != (j, 0), of
///   |z_l + mM - z_j| / |alpha_l + 2 pi m - alpha_j|,
/// together with the diagonal limits |dz_j|.
double chord_arc_min(std::span<const complex> z, std::span<const complex> dz,
                     double period);
double chord_arc_min_serial(std::span<const complex> z,
                            std::span<const complex> dz, double period);

}  // namespace sheetwave::kernels
