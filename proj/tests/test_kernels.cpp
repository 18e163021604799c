#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sheetwave/kernels.hpp"

using namespace sheetwave::kernels;

TEST_SUITE("kernels") {

TEST_CASE("stable cot agrees with cos/sin and stays finite") {
  for (complex z : {complex(0.3, 0.2), complex(-1.1, 2.5), complex(2.0, -0.7)}) {
    CHECK(std::abs(stable_cot(z) - std::cos(z) / std::sin(z)) < 1e-13);
  }
  const complex up = stable_cot(complex(0.4, 800.0));
  const complex down = stable_cot(complex(0.4, -800.0));
  CHECK(std::abs(up - complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(down - complex(0.0, 1.0)) < 1e-15);
}

TEST_CASE("parallel sums equal the serial reference") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const int n = 128;
  const double M = 4.0;
  std::vector<complex> z(n), dz(n);
  std::vector<double> gamma(n);
  for (int j = 0; j < n; ++j) {
    const double a = 2 * std::numbers::pi * j / n;
    z[j] = complex(M * a / (2 * std::numbers::pi) + u(rng) * 0.1, u(rng));
    dz[j] = complex(M / (2 * std::numbers::pi), u(rng));
    gamma[j] = u(rng);
  }
  std::vector<complex> par(n), ser(n);
  const auto rp = birkhoff_rott_sum(z, gamma, M, par);
  const auto rs = birkhoff_rott_sum_serial(z, gamma, M, ser);
  CHECK(rp.min_separation == rs.min_separation);
  for (int j = 0; j < n; ++j) CHECK(par[j] == ser[j]);
  CHECK(chord_arc_min(z, dz, M) == chord_arc_min_serial(z, dz, M));
}

TEST_CASE("minimum separation sees periodic images") {
  const double M = 1.0;
  std::vector<complex> z{0.0, 0.5, 0.9999};
  std::vector<double> gamma{1.0, 1.0, 1.0};
  std::vector<complex> out(3);
  // nodes 0 and 2 are 1e-4 apart across the period
  CHECK(birkhoff_rott_sum_serial(z, gamma, M, out).min_separation == doctest::Approx(1e-4));
}

}  // TEST_SUITE
