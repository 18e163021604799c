#include "sheetwave/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sheetwave::kernels {

namespace {

constexpr double pi = std::numbers::pi;

double separation(complex d, double period) {
  double best = std::abs(d);
  best = std::min(best, std::abs(d - period));
  best = std::min(best, std::abs(d + period));
  return best;
}

// One output node of the alternating-point rule.  Shared by both variants so
// the floating-point summation order is identical.
double br_node(std::span<const complex> z, std::span<const double> gamma,
               double period, int j, complex& out) {
  const int n = static_cast<int>(z.size());
  const double weight = 2.0 * (2.0 * pi / n);
  const double scale = pi / period;
  complex acc{};
  double min_sep = std::numeric_limits<double>::infinity();
  for (int l = 0; l < n; ++l) {
    if (l == j) continue;
    const complex d = z[j] - z[l];
    min_sep = std::min(min_sep, separation(d, period));
    if (((l - j) & 1) == 0) continue;
    acc += gamma[l] * stable_cot(scale * d);
  }
  out = weight * acc / complex(0.0, 2.0 * period);
  return min_sep;
}

double chord_node(std::span<const complex> z, std::span<const complex> dz,
                  double period, int j) {
  const int n = static_cast<int>(z.size());
  const double h = 2.0 * pi / n;
  double best = std::abs(dz[j]);
  for (int m = -1; m <= 1; ++m) {
    for (int l = 0; l < n; ++l) {
      if (m == 0 && l == j) continue;
      const complex dw = z[l] + m * period - z[j];
      const double da = (l - j) * h + 2.0 * pi * m;
      best = std::min(best, std::abs(dw) / std::abs(da));
    }
  }
  return best;
}

}  // namespace

complex stable_cot(complex z) {
  // cot z = i (e^{2iz} + 1) / (e^{2iz} - 1), written with whichever of
  // e^{+2iz}, e^{-2iz} is bounded by one.
  const complex i(0.0, 1.0);
  if (z.imag() >= 0.0) {
    const complex e = std::exp(2.0 * i * z);
    return i * (e + 1.0) / (e - 1.0);
  }
  const complex e = std::exp(-2.0 * i * z);
  return i * (1.0 + e) / (1.0 - e);
}

CotSumResult birkhoff_rott_sum(std::span<const complex> z,
                               std::span<const double> gamma, double period,
                               std::span<complex> out) {
  const int n = static_cast<int>(z.size());
  double min_sep = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : min_sep) schedule(static)
  for (int j = 0; j < n; ++j) {
    min_sep = std::min(min_sep, br_node(z, gamma, period, j, out[j]));
  }
  return {min_sep};
}

CotSumResult birkhoff_rott_sum_serial(std::span<const complex> z,
                                      std::span<const double> gamma,
                                      double period, std::span<complex> out) {
  const int n = static_cast<int>(z.size());
  double min_sep = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    min_sep = std::min(min_sep, br_node(z, gamma, period, j, out[j]));
  }
  return {min_sep};
}

double chord_arc_min(std::span<const complex> z, std::span<const complex> dz,
                     double period) {
  const int n = static_cast<int>(z.size());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(static)
  for (int j = 0; j < n; ++j) best = std::min(best, chord_node(z, dz, period, j));
  return best;
}

double chord_arc_min_serial(std::span<const complex> z,
                            std::span<const complex> dz, double period) {
  const int n = static_cast<int>(z.size());
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) best = std::min(best, chord_node(z, dz, period, j));
  return best;
}

}  // namespace sheetwave::kernels
