#include "sheetwave/linear.hpp"

#include <cmath>
#include <numbers>

#include "sheetwave/errors.hpp"
#include "sheetwave/jacobian.hpp"

namespace sheetwave {

namespace {

constexpr double pi = std::numbers::pi;

double sgn(int k) { return k > 0 ? 1.0 : -1.0; }

}  // namespace

std::array<complex, 2> LinearBlock::apply(const std::array<complex, 2>& v) const {
  return {entries[0][0] * v[0] + entries[0][1] * v[1],
          entries[1][0] * v[0] + entries[1][1] * v[1]};
}

double discriminant(int k, const PhysicalParameters& p) {
  const double kk = k;
  const double gb = p.gamma_bar, A = p.atwood, M = p.period;
  return pi * pi * gb * gb * A * A * kk * kk + pi * p.tau * kk * kk * kk * M -
         pi * pi * kk * kk * gb * gb + kk * A * p.gravity * M * M;
}

double lambda_k(int k, double c, const PhysicalParameters& p) {
  const double ak = std::abs(k);
  const double gb = p.gamma_bar, A = p.atwood, M = p.period;
  return 1.0 +
         (2.0 * gb * c * A * M * pi - M * M * c * c - gb * gb * pi * pi) /
             (M * pi * p.tau) / ak +
         p.gravity * A * M / (pi * p.tau) / (ak * ak);
}

std::optional<SpeedPair> c_plus_minus(int k, const PhysicalParameters& p) {
  const double d = discriminant(k, p);
  if (!(d > 0.0)) return std::nullopt;
  const double shift = pi * p.gamma_bar * p.atwood / p.period;
  const double half_width = std::sqrt(d) / (k * p.period);
  return SpeedPair{shift + half_width, shift - half_width};
}

double resonance_index(int k, const PhysicalParameters& p) {
  return p.atwood * p.gravity * p.period / (pi * p.tau * k);
}

CrossingReport crossing_report(int k, const PhysicalParameters& p) {
  CrossingReport r{};
  r.discriminant_positive = discriminant(k, p) > 0.0;
  r.l_k = resonance_index(k, p);
  const double nearest = std::round(r.l_k);
  const bool candidate = nearest >= 1.0 && nearest != k;
  const double gap = std::abs(r.l_k - nearest);
  r.resonant = candidate && gap < kResonanceTolerance;
  r.near_resonant = candidate && !r.resonant && gap < 1e-3;
  return r;
}

bool crossing_number_is_one(int k, const PhysicalParameters& p) {
  return crossing_report(k, p).in_K();
}

LinearBlock linear_block(int k, double c, const PhysicalParameters& p) {
  LinearBlock block{k, {}};
  if (k == 0) {
    block.entries = {{{1.0, 0.0}, {0.0, 1.0}}};
    return block;
  }
  const double gb = p.gamma_bar, A = p.atwood, M = p.period, tau = p.tau;
  const double g = p.gravity;
  const double kk = k, ak = std::abs(k);
  const complex i(0.0, 1.0);
  const double shear = gb / tau - c * A * M / (pi * tau);
  block.entries[0][0] = 1.0 - (pi * gb / M) * shear / ak + (A * g * M / (pi * tau)) / (kk * kk);
  block.entries[0][1] = i * (A * gb * pi / (tau * M) - c / tau) / kk;
  block.entries[1][0] = i * gb * c * shear / kk -
                        i * (c * M * M * A * g / (pi * pi * tau)) * sgn(k) / (kk * kk);
  block.entries[1][1] = 1.0 + c * (A * gb / tau - c * M / (pi * tau)) / ak;
  return block;
}

Eigen::Matrix2d symmetric_block(int k, double c, const PhysicalParameters& p) {
  // With theta = a sin(k alpha), gamma = b cos(k alpha): theta_hat(k) = -i a/2,
  // gamma_hat(k) = b/2, so a' = L00 a + i L01 b and b' = -i L10 a + L11 b.
  const LinearBlock block = linear_block(k, c, p);
  const complex i(0.0, 1.0);
  Eigen::Matrix2d m;
  m(0, 0) = block.entries[0][0].real();
  m(0, 1) = (i * block.entries[0][1]).real();
  m(1, 0) = (-i * block.entries[1][0]).real();
  m(1, 1) = block.entries[1][1].real();
  return m;
}

const char* to_string(BranchSign sign) {
  return sign == BranchSign::plus ? "+" : "-";
}

std::optional<BifurcationPoint> bifurcation_point(int k, BranchSign sign,
                                                  const PhysicalParameters& p,
                                                  const Grid& grid) {
  if (k < 1) throw std::invalid_argument("wavenumber must be positive");
  const auto roots = c_plus_minus(k, p);
  if (!roots) return std::nullopt;
  const double c = sign == BranchSign::plus ? roots->plus : roots->minus;
  if (c == 0.0) {
    throw ZeroSpeed("bifurcation speed is zero; the eigenfunction is undefined");
  }
  std::vector<double> a(k, 0.0), b(k, 0.0);
  a[k - 1] = -pi / (c * p.period);
  b[k - 1] = 1.0;
  return BifurcationPoint{k, sign, c, crossing_number_is_one(k, p),
                          from_sine_series(grid, a), from_cosine_series(grid, b)};
}

WaveState branch_seed(const BifurcationPoint& point, double epsilon) {
  if (point.speed == 0.0) {
    throw ZeroSpeed("cannot seed a branch at zero speed");
  }
  return WaveState{epsilon * point.eigen_theta, epsilon * point.eigen_gamma,
                   point.speed};
}

JacobianComparison compare_jacobian(double c, const PhysicalParameters& params,
                                    int k_max, int n_points, double fd_step) {
  const Grid grid(n_points);
  const SymmetricBasis basis(grid, k_max);
  JacobianOptions options;
  options.step = fd_step;
  options.scheme = Differencing::central;
  const Eigen::MatrixXd fd =
      fd_jacobian(basis, WaveState::flat(grid, c), params, options);

  Eigen::MatrixXd exact = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
  for (int k = 1; k <= k_max; ++k) {
    const Eigen::Matrix2d b = symmetric_block(k, c, params);
    const int ia = k - 1, ib = k_max + k - 1;
    exact(ia, ia) = b(0, 0);
    exact(ia, ib) = b(0, 1);
    exact(ib, ia) = b(1, 0);
    exact(ib, ib) = b(1, 1);
  }
  const double err = (fd - exact).cwiseAbs().maxCoeff() / exact.cwiseAbs().maxCoeff();
  return {err, fd, exact};
}

double numeric_jacobian_check(double c, const PhysicalParameters& params,
                              int k_max, int n_points, double fd_step) {
  return compare_jacobian(c, params, k_max, n_points, fd_step).max_relative_error;
}

}  // namespace sheetwave
