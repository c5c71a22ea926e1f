#pragma once

#include <Eigen/Dense>

#include "rdmkit/errors.hpp"

namespace rdmkit {

inline constexpr double kSymTol = 1e-10;
inline constexpr double kClampTol = 1e-8;
/// Eigenvalues below this are treated as exact zeros when square-rooting.
inline constexpr double kZeroOccupation = 1e-12;

/// Dense real square matrix admitted only if max |A_ij - A_ji| <= sym_tol.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::MatrixXd entries, double sym_tol = kSymTol);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& mat() const { return mat_; }
  double operator()(int i, int j) const { return mat_(i, j); }
  double trace() const { return mat_.trace(); }

  static SymMatrix identity(int dim);
  static SymMatrix zero(int dim);

 private:
  Eigen::MatrixXd mat_;
};

/// Eigendecomposition with ascending eigenvalues; column k of
/// `eigenvectors` pairs with `eigenvalues[k]`. Signs follow a fixed
/// convention (largest-magnitude component positive, ties broken by
/// lowest index) so repeated runs serialize identically.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

Spectrum sym_eigen(const SymMatrix& a);

/// Eigendecomposition of (M + M^T)/2 without the symmetry admission
/// check; the kernel behind sym_eigen, the validators, and the
/// representability checker.
Spectrum symmetrized_eigen(const Eigen::MatrixXd& m);

/// V max(lambda, 0)^{1/2} V^T. An eigenvalue below -clamp_tol raises
/// NotPSD carrying that eigenvalue; eigenvalues in [-clamp_tol,
/// kZeroOccupation) are taken as zero.
SymMatrix psd_sqrt(const SymMatrix& a, double clamp_tol = kClampTol);

/// Frobenius norm of AB - BA.
double commutator_norm(const SymMatrix& a, const SymMatrix& b);

}  // namespace rdmkit
