#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sheetwave/errors.hpp"
#include "sheetwave/spectral.hpp"

using namespace sheetwave;

namespace {

constexpr double pi = std::numbers::pi;

SpectralField sampled(const Grid& g, double (*f)(double), Parity p = Parity::none) {
  std::vector<double> v(g.size());
  for (int j = 0; j < g.size(); ++j) v[j] = f(g.node(j));
  return {g, v, p};
}

SpectralField random_band_limited(const Grid& g, std::mt19937_64& rng, double mean_value) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size(), mean_value);
  for (int k = 1; k < g.size() / 3; ++k) {
    const double a = u(rng) / k, b = u(rng) / k;
    for (int j = 0; j < g.size(); ++j) {
      v[j] += a * std::cos(k * g.node(j)) + b * std::sin(k * g.node(j));
    }
  }
  return {g, v};
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("grid rejects odd and tiny sizes") {
  CHECK_THROWS_AS(Grid(63), std::invalid_argument);
  CHECK_THROWS_AS(Grid(6), std::invalid_argument);
  CHECK_NOTHROW(Grid(8));
  const Grid g(64);
  CHECK(g.max_wavenumber() == 31);
  CHECK(g.wavenumber(33) == -31);
  CHECK(g.node(16) == doctest::Approx(pi / 2));
}

TEST_CASE("derivative and hilbert of pure modes") {
  const Grid g(32);
  const auto s3 = sampled(g, [](double x) { return std::sin(3 * x); }, Parity::odd);
  const auto c3 = sampled(g, [](double x) { return std::cos(3 * x); }, Parity::even);
  CHECK(sup_norm(derivative(s3) - 3.0 * c3) < 1e-13);
  // H cos = sin, H sin = -cos
  CHECK(sup_norm(hilbert(c3) - s3) < 1e-14);
  CHECK(sup_norm(hilbert(s3) + c3) < 1e-14);
  CHECK(hilbert(c3).parity == Parity::odd);
  CHECK(derivative(s3).parity == Parity::even);
}

TEST_CASE("inverse second derivative") {
  const Grid g(64);
  const auto c2 = sampled(g, [](double x) { return std::cos(2 * x); }, Parity::even);
  CHECK(sup_norm(inverse_second_derivative(c2) + 0.25 * c2) < 1e-15);

  SUBCASE("rejects a nonzero mean") {
    const auto shifted = sampled(g, [](double x) { return 1.0 + std::cos(x); });
    CHECK_THROWS_AS(inverse_second_derivative(shifted), NonZeroMean);
  }
  SUBCASE("output is mean-zero and periodic") {
    std::mt19937_64 rng(7);
    const auto f = project_mean_zero(random_band_limited(g, rng, 0.0));
    const auto u = inverse_second_derivative(f);
    CHECK(std::abs(mean(u)) < 1e-15);
    CHECK(sup_norm(derivative(derivative(u)) - f) < 1e-12);
  }
}

TEST_CASE("operator identities hold on random band-limited fields") {
  std::mt19937_64 rng(11);
  for (int n : {16, 64, 128}) {
    const Grid g(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_band_limited(g, rng, 0.4);
      const auto hh = hilbert(hilbert(f));
      CHECK(sup_norm(hh + project_mean_zero(f)) < 1e-12);
      CHECK(std::abs(mean(hilbert(f))) < 1e-14);
      // H commutes with d/dalpha
      CHECK(sup_norm(hilbert(derivative(f)) - derivative(hilbert(f))) < 1e-11);
    }
  }
}

TEST_CASE("parity projection and defect") {
  const Grid g(32);
  const auto mix = sampled(g, [](double x) { return std::sin(x) + 1e-3 * std::cos(2 * x); });
  CHECK(parity_defect(mix, Parity::odd) == doctest::Approx(1e-3).epsilon(1e-6));
  const auto odd = project_parity(mix, Parity::odd);
  CHECK(parity_defect(odd, Parity::odd) < 1e-15);
  CHECK(odd.parity == Parity::odd);
  CHECK(has_parity(odd, Parity::odd));
  CHECK_FALSE(has_parity(mix, Parity::odd));
  CHECK(parity_defect(SpectralField::zeros(g), Parity::even) == 0.0);
}

TEST_CASE("sine and cosine coefficient round trip") {
  const Grid g(32);
  std::vector<double> a{0.5, -0.25, 0.0, 0.125};
  const auto f = from_sine_series(g, a);
  CHECK(f.parity == Parity::odd);
  const auto back = sine_coefficients(f, 4);
  for (int k = 0; k < 4; ++k) CHECK(back[k] == doctest::Approx(a[k]).epsilon(1e-14));
  std::vector<double> b{1.0, 0.0, -2.0};
  const auto e = from_cosine_series(g, b, 0.3);
  CHECK(mean(e) == doctest::Approx(0.3));
  const auto bb = cosine_coefficients(e, 3);
  for (int k = 0; k < 3; ++k) CHECK(bb[k] == doctest::Approx(b[k]).epsilon(1e-14));
}

TEST_CASE("norms of pure modes") {
  const Grid g(64);
  const auto s3 = sampled(g, [](double x) { return std::sin(3 * x); });
  // |sin 3a|_{H1}^2 = 2 * (1/2)^2 * (1 + 9)
  CHECK(h1_norm(s3) == doctest::Approx(std::sqrt(5.0)));
  CHECK(l2_norm(s3) == doctest::Approx(std::sqrt(0.5)));
  CHECK(sup_norm(s3) == doctest::Approx(1.0));
}

TEST_CASE("resampling a band-limited field is exact") {
  std::mt19937_64 rng(3);
  const Grid coarse(32), fine(64);
  const auto f = random_band_limited(coarse, rng, 0.2);
  const auto up = resample(f, fine);
  for (int j = 0; j < coarse.size(); ++j) CHECK(up[2 * j] == doctest::Approx(f[j]).epsilon(1e-13));
  CHECK(sup_norm(resample(up, coarse) - f) < 1e-14);
}

TEST_CASE("complex periodic antiderivative") {
  const Grid g(32);
  std::vector<complex> v(g.size());
  for (int j = 0; j < g.size(); ++j) v[j] = std::exp(complex(0.0, 2.0 * g.node(j)));
  const auto anti = periodic_antiderivative(ComplexField(g, v));
  CHECK(std::abs(anti[0]) < 1e-15);
  for (int j = 0; j < g.size(); ++j) {
    const complex expected = (v[j] - 1.0) / complex(0.0, 2.0);
    CHECK(std::abs(anti[j] - expected) < 1e-14);
  }
}

}  // TEST_SUITE
