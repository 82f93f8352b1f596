#include "qlogic/gleason.hpp"

#include <algorithm>
#include <cmath>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

using C = std::complex<double>;

// Hermitian basis G_0..G_8: diagonal units, then symmetric and
// antisymmetric off-diagonal pairs.
std::array<Eigen::Matrix3cd, 9> hermitian_basis() {
  std::array<Eigen::Matrix3cd, 9> g;
  for (auto& m : g) m.setZero();
  int k = 0;
  for (int i = 0; i < 3; ++i) g[k++](i, i) = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      g[k](i, j) = g[k](j, i) = 1;
      ++k;
      g[k](i, j) = C(0, -1);
      g[k](j, i) = C(0, 1);
      ++k;
    }
  return g;
}

Eigen::Matrix3cd complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = C(n(rng), n(rng));
  return m;
}

}  // namespace

FrameReport gleason_frame_check(const Eigen::Matrix3cd& rho, const std::vector<Basis3>& bases, double tol) {
  if ((rho - rho.adjoint()).norm() > tol) throw InputError("InvalidState", "state is not Hermitian", {});
  if (std::abs(rho.trace() - 1.0) > tol) throw InputError("InvalidState", "state does not have unit trace", {});
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> eig(rho);
  if (eig.eigenvalues().minCoeff() < -tol)
    throw InputError("InvalidState", "state is not positive semidefinite", {});

  FrameReport r;
  r.min_value = 1;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto& u = bases[b];
    if ((u.adjoint() * u - Eigen::Matrix3cd::Identity()).norm() > tol)
      throw InputError("NonOrthonormalBasis", "basis " + std::to_string(b) + " is not orthonormal", {{"index", b}});
    std::array<double, 3> v{};
    for (int k = 0; k < 3; ++k) v[static_cast<std::size_t>(k)] = (u.col(k).adjoint() * rho * u.col(k))(0, 0).real();
    const double sum = v[0] + v[1] + v[2];
    r.values.push_back(v);
    r.sums.push_back(sum);
    r.min_value = std::min({r.min_value, v[0], v[1], v[2]});
    r.max_sum_error = std::max(r.max_sum_error, std::abs(sum - 1));
  }
  r.ok = r.min_value >= -tol && r.max_sum_error <= tol;
  return r;
}

StateFit fit_density_matrix(const std::vector<Basis3>& bases, const std::vector<std::array<double, 3>>& values) {
  if (bases.size() != values.size() || bases.empty())
    throw InputError("InvalidFrameData", "need one value triple per basis", {});
  const auto g = hermitian_basis();
  const auto rows = static_cast<Eigen::Index>(3 * bases.size());
  Eigen::MatrixXd a(rows, 9);
  Eigen::VectorXd y(rows);
  for (std::size_t b = 0; b < bases.size(); ++b)
    for (int k = 0; k < 3; ++k) {
      const auto row = static_cast<Eigen::Index>(3 * b) + k;
      const Eigen::Vector3cd v = bases[b].col(k);
      for (int p = 0; p < 9; ++p) a(row, p) = (v.adjoint() * g[static_cast<std::size_t>(p)] * v)(0, 0).real();
      y(row) = values[b][static_cast<std::size_t>(k)];
    }
  const auto qr = a.colPivHouseholderQr();
  const Eigen::VectorXd theta = qr.solve(y);
  StateFit fit;
  fit.rho.setZero();
  for (int p = 0; p < 9; ++p) fit.rho += theta(p) * g[static_cast<std::size_t>(p)];
  fit.residual = (a * theta - y).norm();
  fit.rank = static_cast<int>(qr.rank());
  return fit;
}

Eigen::Matrix3cd random_density_matrix(std::mt19937_64& rng) {
  const Eigen::Matrix3cd m = complex_gaussian(rng);
  Eigen::Matrix3cd rho = m * m.adjoint();
  return rho / rho.trace();
}

Basis3 random_basis(std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::Matrix3cd> qr(complex_gaussian(rng));
  return qr.householderQ() * Eigen::Matrix3cd::Identity();
}

}  // namespace qlogic
