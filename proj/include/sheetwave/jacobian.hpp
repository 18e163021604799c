#pragma once

#include <Eigen/Dense>

#include "sheetwave/wave_system.hpp"

namespace sheetwave {

/// Coordinates on the symmetric subspace: theta = sum a_k sin(k alpha),
/// gamma_1 = sum b_k cos(k alpha), k = 1..k_max.  Vectors are laid out as
/// (a_1..a_K, b_1..b_K).
class SymmetricBasis {
 public:
  SymmetricBasis(Grid grid, int k_max);
  /// Full basis for the grid: k_max = n/2 - 1.
  explicit SymmetricBasis(Grid grid) : SymmetricBasis(grid, grid.max_wavenumber()) {}

  const Grid& grid() const noexcept { return grid_; }
  int k_max() const noexcept { return k_max_; }
  int dim() const noexcept { return 2 * k_max_; }

  Eigen::VectorXd pack(const WaveState& state) const;
  WaveState unpack(const Eigen::VectorXd& x, double c) const;
  Eigen::VectorXd pack(const Residual& r) const;

  /// Weights of the H^1 inner product in these coordinates:
  /// |a sin(k alpha)|_{H1}^2 = a^2 (1 + k^2) / 2.
  Eigen::VectorXd h1_weights() const;

 private:
  Grid grid_;
  int k_max_;
};

enum class Differencing { forward, central };

struct JacobianOptions {
  double step = 1e-7;  // relative: h_j = step * max(1, |x_j|)
  Differencing scheme = Differencing::forward;
  bool speed_column = false;  // append d/dc as the last column
  bool parallel = true;       // OpenMP over columns
  double h_min = kDefaultHMin;
};

/// Finite-difference Jacobian of the packed residual.  Rows are the packed
/// residual coefficients; columns the basis directions (plus c if requested).
/// Domain errors raised while perturbing propagate to the caller.
Eigen::MatrixXd fd_jacobian(const SymmetricBasis& basis, const WaveState& at,
                            const PhysicalParameters& params,
                            const JacobianOptions& options);

}  // namespace sheetwave
