#include "rdmkit/dafh.hpp"

#include <cmath>
#include <sstream>

namespace rdmkit {

double CumulantTensor::frobenius_norm() const {
  double sum = 0.0;
  for (double x : tensor.data()) sum += x * x;
  return std::sqrt(sum);
}

double duodempotency_deviation(const OneRdm& d) {
  const Eigen::MatrixXd& m = d.matrix().mat();
  return (m * m - 2.0 * m).norm();
}

namespace {

void require_duodempotent(const OneRdm& d) {
  const double dev = duodempotency_deviation(d);
  if (!(dev <= kDuodempotentTol)) {
    std::ostringstream os;
    os << "1-RDM is not duodempotent: ||D^2 - 2D|| = " << dev;
    throw Error(ErrorCode::NotDuodempotent, os.str(), dev);
  }
}

}  // namespace

DomainRestrictedRdm dafh_matrix(const OneRdm& d, const TwoRdm& d2, const SymMatrix& s,
                                std::string domain_label) {
  const int m = d.dim();
  if (d2.dim() != m || s.dim() != m) {
    throw Error(ErrorCode::DimensionMismatch, "dafh_matrix: dimensions differ");
  }

  const Eigen::MatrixXd& dm = d.matrix().mat();
  const Eigen::MatrixXd& sm = s.mat();
  const double population = (dm * sm).trace();

  const Tensor4& t = d2.tensor();
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double contracted = 0.0;
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) contracted += t(i, k, j, l) * sm(l, k);
      }
      g(i, j) = population * dm(i, j) - 2.0 * contracted;
    }
  }
  g = 0.5 * (g + g.transpose()).eval();
  return DomainRestrictedRdm::make(std::move(domain_label), SymMatrix(std::move(g)),
                                   Provenance::DAFH);
}

DomainRestrictedRdm single_det_dafh(const OneRdm& d, const SymMatrix& s,
                                    std::string domain_label) {
  if (s.dim() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "single_det_dafh: dimensions differ");
  }
  require_duodempotent(d);
  const Eigen::MatrixXd& dm = d.matrix().mat();
  Eigen::MatrixXd g = 0.5 * dm * s.mat() * dm;
  g = 0.5 * (g + g.transpose()).eval();
  return DomainRestrictedRdm::make(std::move(domain_label), SymMatrix(std::move(g)),
                                   Provenance::SingleDetDAFH);
}

TwoRdm single_det_two_rdm(const OneRdm& d) {
  require_duodempotent(d);
  const int m = d.dim();
  const Eigen::MatrixXd& dm = d.matrix().mat();
  Tensor4 t(m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
          t(i, k, j, l) = 0.5 * dm(i, j) * dm(k, l) - 0.25 * dm(i, l) * dm(k, j);
  return validate_two_rdm(t, d);
}

CumulantTensor cumulant(const OneRdm& d, const TwoRdm& d2) {
  const int m = d.dim();
  if (d2.dim() != m) {
    throw Error(ErrorCode::DimensionMismatch, "cumulant: dimensions differ");
  }
  const Eigen::MatrixXd& dm = d.matrix().mat();
  const Tensor4& t = d2.tensor();
  Tensor4 lambda(m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
          lambda(i, k, j, l) =
              t(i, k, j, l) - 0.5 * dm(i, j) * dm(k, l) + 0.25 * dm(i, l) * dm(k, j);
  return CumulantTensor{std::move(lambda)};
}

}  // namespace rdmkit
