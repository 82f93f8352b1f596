#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qlogic {

/// An orthonormal basis of C^3, one vector per column.
using Basis3 = Eigen::Matrix3cd;

struct FrameReport {
  /// trace(ρ P_k) for every basis and column k.
  std::vector<std::array<double, 3>> values;
  std::vector<double> sums;
  double min_value = 0;
  double max_sum_error = 0;
  /// All values ≥ −tolerance and all sums within tolerance of 1.
  bool ok = false;
};

/// Evaluates the frame function P ↦ trace(ρP) on the rank-one projectors of
/// each basis. Throws InputError("InvalidState") unless ρ is Hermitian,
/// positive semidefinite and of unit trace, and
/// InputError("NonOrthonormalBasis") for a basis off by more than `tolerance`.
FrameReport gleason_frame_check(const Eigen::Matrix3cd& rho, const std::vector<Basis3>& bases,
                                double tolerance = 1e-9);

struct StateFit {
  Eigen::Matrix3cd rho;
  /// Euclidean norm of the data residual.
  double residual = 0;
  /// Rank of the 3m × 9 design matrix; 9 means the state is identified.
  int rank = 0;
};

/// Least-squares Hermitian ρ with trace(ρ P) matching the frame values.
StateFit fit_density_matrix(const std::vector<Basis3>& bases, const std::vector<std::array<double, 3>>& values);

Eigen::Matrix3cd random_density_matrix(std::mt19937_64& rng);
Basis3 random_basis(std::mt19937_64& rng);

}  // namespace qlogic
