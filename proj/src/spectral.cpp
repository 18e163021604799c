#include "sheetwave/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sheetwave/errors.hpp"

namespace sheetwave {

const char* to_string(DomainEvent event) {
  switch (event) {
    case DomainEvent::NotGraphlike: return "NotGraphlike";
    case DomainEvent::SelfIntersecting: return "SelfIntersecting";
    case DomainEvent::InnerCurveSelfIntersecting: return "InnerCurveSelfIntersecting";
    case DomainEvent::TooCloseToCurve: return "TooCloseToCurve";
  }
  return "unknown";
}

Grid::Grid(int n_points) : n_(n_points) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw std::invalid_argument("grid size must be even and >= 8, got " +
                                std::to_string(n_points));
  }
}

double Grid::spacing() const noexcept { return 2.0 * std::numbers::pi / n_; }

double Grid::node(int j) const noexcept { return spacing() * j; }

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

const char* to_string(Parity parity) {
  switch (parity) {
    case Parity::odd: return "odd";
    case Parity::even: return "even";
    case Parity::none: return "none";
  }
  return "none";
}

Parity flip(Parity parity) {
  switch (parity) {
    case Parity::odd: return Parity::even;
    case Parity::even: return Parity::odd;
    case Parity::none: return Parity::none;
  }
  return Parity::none;
}

SpectralField::SpectralField(Grid g, std::vector<double> v, Parity p)
    : grid(g), values(std::move(v)), parity(p) {
  if (static_cast<int>(values.size()) != grid.size()) {
    throw std::invalid_argument("field size does not match grid");
  }
}

SpectralField SpectralField::zeros(Grid g, Parity p) {
  return SpectralField(g, std::vector<double>(g.size(), 0.0), p);
}

ComplexField::ComplexField(Grid g, std::vector<complex> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.size()) {
    throw std::invalid_argument("field size does not match grid");
  }
}

ComplexField ComplexField::zeros(Grid g) {
  return ComplexField(g, std::vector<complex>(g.size(), complex{}));
}

namespace fft {
namespace {

// FFTW planning is not thread-safe, execution with new arrays is.  Plans are
// created once per size and sign under a lock and reused for unaligned data.
fftw_plan plan_for(int n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(n, sign);
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  auto* in = fftw_alloc_complex(n);
  auto* out = fftw_alloc_complex(n);
  fftw_plan plan =
      fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  plans.emplace(key, plan);
  return plan;
}

std::vector<complex> execute(std::span<const complex> data, int sign) {
  const int n = static_cast<int>(data.size());
  std::vector<complex> in(data.begin(), data.end());
  std::vector<complex> out(n);
  fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<complex> forward(std::span<const complex> values) {
  auto out = execute(values, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<complex> inverse(std::span<const complex> coefficients) {
  return execute(coefficients, FFTW_BACKWARD);
}

std::vector<complex> forward(const SpectralField& f) {
  std::vector<complex> v(f.values.begin(), f.values.end());
  return forward(v);
}

std::vector<complex> forward(const ComplexField& f) { return forward(f.values); }

SpectralField to_real(const Grid& grid, std::span<const complex> coefficients,
                      Parity parity) {
  auto v = inverse(coefficients);
  std::vector<double> re(v.size());
  std::transform(v.begin(), v.end(), re.begin(),
                 [](complex z) { return z.real(); });
  return SpectralField(grid, std::move(re), parity);
}

ComplexField to_complex(const Grid& grid, std::span<const complex> coefficients) {
  return ComplexField(grid, inverse(coefficients));
}

}  // namespace fft

namespace {

template <typename Multiplier>
std::vector<complex> apply(std::vector<complex> c, const Grid& grid,
                           Multiplier&& m) {
  for (int i = 0; i < grid.size(); ++i) c[i] *= m(grid.wavenumber(i));
  return c;
}

double sgn(int k) { return k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0); }

}  // namespace

SpectralField derivative(const SpectralField& f) {
  const int nyq = f.grid.nyquist();
  auto c = apply(fft::forward(f), f.grid, [nyq](int k) {
    return k == nyq ? complex{} : complex(0.0, k);
  });
  return fft::to_real(f.grid, c, flip(f.parity));
}

SpectralField hilbert(const SpectralField& f) {
  const int nyq = f.grid.nyquist();
  auto c = apply(fft::forward(f), f.grid, [nyq](int k) {
    return k == nyq ? complex{} : complex(0.0, -sgn(k));
  });
  return fft::to_real(f.grid, c, flip(f.parity));
}

SpectralField inverse_second_derivative(const SpectralField& f) {
  auto c = fft::forward(f);
  const double scale = std::max(1.0, sup_norm(f));
  if (std::abs(c[0].real()) > kMeanZeroTolerance * scale) {
    throw NonZeroMean("inverse_second_derivative: input mean " +
                      std::to_string(c[0].real()) + " is not zero");
  }
  const int nyq = f.grid.nyquist();
  c = apply(std::move(c), f.grid, [nyq](int k) {
    if (k == 0 || k == nyq) return complex{};
    return complex(-1.0 / (static_cast<double>(k) * k), 0.0);
  });
  return fft::to_real(f.grid, c, f.parity);
}

double mean(const SpectralField& f) {
  // Summation order matches the trapezoid rule; equal to c_0 of forward().
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / f.size();
}

complex mean(const ComplexField& f) {
  complex s{};
  for (auto v : f.values) s += v;
  return s / static_cast<double>(f.size());
}

SpectralField project_mean_zero(const SpectralField& f) {
  auto c = fft::forward(f);
  c[0] = 0.0;
  return fft::to_real(f.grid, c, f.parity);
}

SpectralField project_parity(const SpectralField& f, Parity parity) {
  if (parity == Parity::none) return f;
  auto c = fft::forward(f);
  for (auto& ck : c) {
    ck = parity == Parity::odd ? complex(0.0, ck.imag()) : complex(ck.real(), 0.0);
  }
  return fft::to_real(f.grid, c, parity);
}

ComplexField derivative(const ComplexField& f) {
  const int nyq = f.grid.nyquist();
  auto c = apply(fft::forward(f), f.grid, [nyq](int k) {
    return k == nyq ? complex{} : complex(0.0, k);
  });
  return fft::to_complex(f.grid, c);
}

ComplexField periodic_antiderivative(const ComplexField& f) {
  const int nyq = f.grid.nyquist();
  auto c = apply(fft::forward(f), f.grid, [nyq](int k) {
    if (k == 0 || k == nyq) return complex{};
    return complex(0.0, -1.0 / k);
  });
  auto out = fft::to_complex(f.grid, c);
  const complex at_zero = out.values[0];
  for (auto& v : out.values) v -= at_zero;
  return out;
}

double parity_defect(const SpectralField& f, Parity parity) {
  if (parity == Parity::none) return 0.0;
  const auto c = fft::forward(f);
  double total = 0.0, discarded = 0.0;
  for (auto ck : c) {
    total += std::norm(ck);
    discarded += parity == Parity::odd ? ck.real() * ck.real()
                                       : ck.imag() * ck.imag();
  }
  // Fields at round-off level are measured against unit scale.
  return std::sqrt(discarded / std::max(total, 1.0e-24));
}

bool has_parity(const SpectralField& f, Parity parity, double tolerance) {
  return parity_defect(f, parity) < tolerance;
}

double h1_norm(const SpectralField& f) {
  const auto c = fft::forward(f);
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double k = f.grid.wavenumber(i);
    s += (1.0 + k * k) * std::norm(c[i]);
  }
  return std::sqrt(s);
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s / f.size());
}

double sup_norm(const SpectralField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const ComplexField& f) {
  double m = 0.0;
  for (auto v : f.values) m = std::max(m, std::abs(v));
  return m;
}

SpectralField spectral_floor_filter(const SpectralField& f, double relative_floor) {
  auto c = fft::forward(f);
  double largest = 0.0;
  for (auto ck : c) largest = std::max(largest, std::abs(ck));
  for (auto& ck : c) {
    if (std::abs(ck) < relative_floor * largest) ck = 0.0;
  }
  return fft::to_real(f.grid, c, f.parity);
}

SpectralField resample(const SpectralField& f, const Grid& target) {
  const auto c = fft::forward(f);
  std::vector<complex> out(target.size(), complex{});
  const int k_keep = std::min(f.grid.max_wavenumber(), target.max_wavenumber());
  out[0] = c[0];
  for (int k = 1; k <= k_keep; ++k) {
    out[k] = c[k];
    out[target.size() - k] = c[f.size() - k];
  }
  return fft::to_real(target, out, f.parity);
}

std::vector<double> sine_coefficients(const SpectralField& f, int k_max) {
  const auto c = fft::forward(f);
  std::vector<double> a(k_max);
  for (int k = 1; k <= k_max; ++k) a[k - 1] = -2.0 * c[k].imag();
  return a;
}

std::vector<double> cosine_coefficients(const SpectralField& f, int k_max) {
  const auto c = fft::forward(f);
  std::vector<double> b(k_max);
  for (int k = 1; k <= k_max; ++k) b[k - 1] = 2.0 * c[k].real();
  return b;
}

SpectralField from_sine_series(const Grid& grid, std::span<const double> a) {
  std::vector<complex> c(grid.size(), complex{});
  for (int k = 1; k <= static_cast<int>(a.size()); ++k) {
    c[k] = complex(0.0, -0.5 * a[k - 1]);
    c[grid.size() - k] = std::conj(c[k]);
  }
  return fft::to_real(grid, c, Parity::odd);
}

SpectralField from_cosine_series(const Grid& grid, std::span<const double> b,
                                 double mean_value) {
  std::vector<complex> c(grid.size(), complex{});
  c[0] = mean_value;
  for (int k = 1; k <= static_cast<int>(b.size()); ++k) {
    c[k] = 0.5 * b[k - 1];
    c[grid.size() - k] = c[k];
  }
  return fft::to_real(grid, c, Parity::even);
}

namespace {

Parity combine_sum(Parity a, Parity b) { return a == b ? a : Parity::none; }

Parity combine_product(Parity a, Parity b) {
  if (a == Parity::none || b == Parity::none) return Parity::none;
  return a == b ? Parity::even : Parity::odd;
}

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
}

}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = a[j] + b[j];
  return SpectralField(a.grid, std::move(v), combine_sum(a.parity, b.parity));
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = a[j] - b[j];
  return SpectralField(a.grid, std::move(v), combine_sum(a.parity, b.parity));
}

SpectralField operator*(double s, const SpectralField& a) {
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = s * a[j];
  return SpectralField(a.grid, std::move(v), a.parity);
}

SpectralField operator*(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (int j = 0; j < a.size(); ++j) v[j] = a[j] * b[j];
  return SpectralField(a.grid, std::move(v), combine_product(a.parity, b.parity));
}

}  // namespace sheetwave
