#include "sheetwave/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <vector>

namespace sheetwave {

SymmetricBasis::SymmetricBasis(Grid grid, int k_max) : grid_(grid), k_max_(k_max) {
  if (k_max < 1 || k_max > grid.max_wavenumber()) {
    throw std::invalid_argument("basis wavenumber cutoff out of range");
  }
}

Eigen::VectorXd SymmetricBasis::pack(const WaveState& state) const {
  Eigen::VectorXd x(dim());
  const auto a = sine_coefficients(state.theta, k_max_);
  const auto b = cosine_coefficients(state.gamma1, k_max_);
  for (int k = 0; k < k_max_; ++k) {
    x[k] = a[k];
    x[k_max_ + k] = b[k];
  }
  return x;
}

WaveState SymmetricBasis::unpack(const Eigen::VectorXd& x, double c) const {
  std::vector<double> a(x.data(), x.data() + k_max_);
  std::vector<double> b(x.data() + k_max_, x.data() + 2 * k_max_);
  return WaveState{from_sine_series(grid_, a), from_cosine_series(grid_, b), c};
}

Eigen::VectorXd SymmetricBasis::pack(const Residual& r) const {
  Eigen::VectorXd x(dim());
  const auto a = sine_coefficients(r.r_theta, k_max_);
  const auto b = cosine_coefficients(r.r_gamma, k_max_);
  for (int k = 0; k < k_max_; ++k) {
    x[k] = a[k];
    x[k_max_ + k] = b[k];
  }
  return x;
}

Eigen::VectorXd SymmetricBasis::h1_weights() const {
  Eigen::VectorXd w(dim());
  for (int k = 1; k <= k_max_; ++k) {
    w[k - 1] = w[k_max_ + k - 1] = 0.5 * (1.0 + double(k) * k);
  }
  return w;
}

Eigen::MatrixXd fd_jacobian(const SymmetricBasis& basis, const WaveState& at,
                            const PhysicalParameters& params,
                            const JacobianOptions& options) {
  const int n = basis.dim();
  const int cols = n + (options.speed_column ? 1 : 0);
  const Eigen::VectorXd x0 = basis.pack(at);
  const double c0 = at.c;

  Eigen::VectorXd f0;
  if (options.scheme == Differencing::forward) {
    f0 = basis.pack(residual(basis.unpack(x0, c0), params, options.h_min));
  }

  auto evaluate = [&](int col, double delta) {
    Eigen::VectorXd x = x0;
    double c = c0;
    if (col < n) x[col] += delta; else c += delta;
    return basis.pack(residual(basis.unpack(x, c), params, options.h_min));
  };

  Eigen::MatrixXd jac(n, cols);
  std::vector<std::exception_ptr> errors(cols);
#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (int col = 0; col < cols; ++col) {
    try {
      const double base = col < n ? x0[col] : c0;
      const double h = options.step * std::max(1.0, std::abs(base));
      if (options.scheme == Differencing::forward) {
        jac.col(col) = (evaluate(col, h) - f0) / h;
      } else {
        jac.col(col) = (evaluate(col, h) - evaluate(col, -h)) / (2.0 * h);
      }
    } catch (...) {
      errors[col] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return jac;
}

}  // namespace sheetwave
