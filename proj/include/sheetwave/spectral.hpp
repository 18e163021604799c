#pragma once

// Periodic Fourier collocation on [0, 2pi).
//
// Coefficients are stored in FFT order (k = 0, 1, ..., n/2, -(n/2-1), ..., -1)
// and normalized so that f(alpha_j) = sum_k c_k exp(i k alpha_j); c_0 is the
// mean.  The Nyquist mode k = n/2 is dropped by every differential operator.

#include <complex>
#include <span>
#include <vector>

namespace sheetwave {

using complex = std::complex<double>;

class Grid {
 public:
  /// Throws std::invalid_argument unless n_points is even and >= 8.
  explicit Grid(int n_points);

  int size() const noexcept { return n_; }
  double spacing() const noexcept;
  double node(int j) const noexcept;
  std::vector<double> nodes() const;

  /// Signed wavenumber stored at FFT index i.  The Nyquist slot maps to +n/2.
  int wavenumber(int i) const noexcept { return i <= n_ / 2 ? i : i - n_; }
  int nyquist() const noexcept { return n_ / 2; }
  /// Largest wavenumber kept by the differential operators.
  int max_wavenumber() const noexcept { return n_ / 2 - 1; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
};

enum class Parity { none, odd, even };

const char* to_string(Parity parity);

/// Flip odd <-> even; none stays none.
Parity flip(Parity parity);

/// Real 2pi-periodic function sampled at the grid nodes.  The parity tag is
/// a claim propagated exactly by the operators below; parity_defect() measures
/// how well the values honor it.
struct SpectralField {
  Grid grid;
  std::vector<double> values;
  Parity parity = Parity::none;

  SpectralField(Grid g, std::vector<double> v, Parity p = Parity::none);
  static SpectralField zeros(Grid g, Parity p = Parity::none);

  int size() const noexcept { return grid.size(); }
  double operator[](int j) const { return values[j]; }
};

struct ComplexField {
  Grid grid;
  std::vector<complex> values;

  ComplexField(Grid g, std::vector<complex> v);
  static ComplexField zeros(Grid g);

  int size() const noexcept { return grid.size(); }
  complex operator[](int j) const { return values[j]; }
};

/// Discarded coefficients with relative L2 norm below this count as absent.
inline constexpr double kParityTolerance = 1e-10;

/// |mean| above this (relative to max(1, sup|f|)) is rejected by
/// inverse_second_derivative.
inline constexpr double kMeanZeroTolerance = 1e-10;

namespace fft {

/// Normalized forward transform (divides by n).
std::vector<complex> forward(std::span<const complex> values);
/// Inverse of forward().
std::vector<complex> inverse(std::span<const complex> coefficients);

std::vector<complex> forward(const SpectralField& f);
std::vector<complex> forward(const ComplexField& f);

/// Real part of the inverse transform.
SpectralField to_real(const Grid& grid, std::span<const complex> coefficients,
                      Parity parity);
ComplexField to_complex(const Grid& grid, std::span<const complex> coefficients);

}  // namespace fft

// Multiplier operators on real fields.
SpectralField derivative(const SpectralField& f);
SpectralField hilbert(const SpectralField& f);
/// Multiplier -1/k^2 (0 at k = 0 and at Nyquist).  Throws NonZeroMean when the
/// input is not mean-zero.
SpectralField inverse_second_derivative(const SpectralField& f);
double mean(const SpectralField& f);
SpectralField project_mean_zero(const SpectralField& f);
SpectralField project_parity(const SpectralField& f, Parity parity);

// Complex-field counterparts used by the curve reconstruction.
complex mean(const ComplexField& f);
ComplexField derivative(const ComplexField& f);
/// Periodic antiderivative of the mean-zero part, normalized to vanish at
/// alpha = 0.
ComplexField periodic_antiderivative(const ComplexField& f);

/// Relative L2 norm of the coefficients a parity would discard.  For `odd`
/// that is the mean and all cosine content; for `even`, all sine content.
double parity_defect(const SpectralField& f, Parity parity);
bool has_parity(const SpectralField& f, Parity parity,
                double tolerance = kParityTolerance);

/// Discrete H^1 norm: sqrt(sum_k (1 + k^2) |c_k|^2).
double h1_norm(const SpectralField& f);
double l2_norm(const SpectralField& f);  // sqrt(mean(f^2))
double sup_norm(const SpectralField& f);
double sup_norm(const ComplexField& f);

/// Zeroes coefficients below `relative_floor` times the largest one.
SpectralField spectral_floor_filter(const SpectralField& f,
                                    double relative_floor = 1e-13);

/// Zero-pad (or truncate) the spectrum onto another grid.
SpectralField resample(const SpectralField& f, const Grid& target);

// Symmetric-basis helpers: f = sum_{k=1}^{K} a_k sin(k alpha) for odd
// fields and f = sum_{k=1}^{K} b_k cos(k alpha) (+ mean) for even ones.
std::vector<double> sine_coefficients(const SpectralField& f, int k_max);
std::vector<double> cosine_coefficients(const SpectralField& f, int k_max);
SpectralField from_sine_series(const Grid& grid, std::span<const double> a);
SpectralField from_cosine_series(const Grid& grid, std::span<const double> b,
                                 double mean_value = 0.0);

// Pointwise algebra.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
SpectralField operator*(const SpectralField& a, const SpectralField& b);

}  // namespace sheetwave
