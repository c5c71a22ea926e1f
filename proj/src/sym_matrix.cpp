#include "rdmkit/sym_matrix.hpp"

#include <cmath>
#include <sstream>

namespace rdmkit {

namespace {

double asymmetry(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

void fix_eigenvector_signs(Eigen::MatrixXd& v) {
  for (Eigen::Index col = 0; col < v.cols(); ++col) {
    Eigen::Index arg = 0;
    double best = std::abs(v(0, col));
    for (Eigen::Index row = 1; row < v.rows(); ++row) {
      const double a = std::abs(v(row, col));
      if (a > best) {
        best = a;
        arg = row;
      }
    }
    if (v(arg, col) < 0.0) v.col(col) = -v.col(col);
  }
}

}  // namespace

SymMatrix::SymMatrix(Eigen::MatrixXd entries, double sym_tol) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "SymMatrix requires a nonempty square matrix");
  }
  const double dev = asymmetry(mat_);
  if (!(dev <= sym_tol)) {
    std::ostringstream os;
    os << "matrix is not symmetric: max |A_ij - A_ji| = " << dev;
    throw Error(ErrorCode::NonSymmetric, os.str(), dev);
  }
}

SymMatrix SymMatrix::identity(int dim) { return SymMatrix(Eigen::MatrixXd::Identity(dim, dim)); }

SymMatrix SymMatrix::zero(int dim) { return SymMatrix(Eigen::MatrixXd::Zero(dim, dim)); }

Spectrum symmetrized_eigen(const Eigen::MatrixXd& m) {
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument, "eigensolver failed to converge");
  }
  Eigen::MatrixXd vectors = solver.eigenvectors();
  fix_eigenvector_signs(vectors);
  return Spectrum{solver.eigenvalues(), std::move(vectors)};
}

Spectrum sym_eigen(const SymMatrix& a) { return symmetrized_eigen(a.mat()); }

SymMatrix psd_sqrt(const SymMatrix& a, double clamp_tol) {
  Spectrum spec = sym_eigen(a);
  const double min_eig = spec.eigenvalues.minCoeff();
  if (min_eig < -clamp_tol) {
    std::ostringstream os;
    os << "matrix is not positive semidefinite: eigenvalue " << min_eig;
    throw Error(ErrorCode::NotPSD, os.str(), min_eig);
  }
  Eigen::VectorXd roots = spec.eigenvalues.unaryExpr(
      [](double x) { return x < kZeroOccupation ? 0.0 : std::sqrt(x); });
  Eigen::MatrixXd r = spec.eigenvectors * roots.asDiagonal() * spec.eigenvectors.transpose();
  r = 0.5 * (r + r.transpose()).eval();
  return SymMatrix(std::move(r));
}

double commutator_norm(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "commutator_norm: dimensions differ");
  }
  return (a.mat() * b.mat() - b.mat() * a.mat()).norm();
}

}  // namespace rdmkit
