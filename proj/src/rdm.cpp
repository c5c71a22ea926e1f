#include "rdmkit/rdm.hpp"

#include <cmath>
#include <sstream>

namespace rdmkit {

namespace {

std::string describe(double value, const char* what) {
  std::ostringstream os;
  os << what << " " << value;
  return os.str();
}

}  // namespace

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::SymmetricRestriction: return "symmetric_restriction";
    case Provenance::DAFH: return "dafh";
    case Provenance::SingleDetDAFH: return "single_det_dafh";
  }
  return "unknown";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "symmetric_restriction") return Provenance::SymmetricRestriction;
  if (s == "dafh") return Provenance::DAFH;
  if (s == "single_det_dafh") return Provenance::SingleDetDAFH;
  throw Error(ErrorCode::ParseError, "unknown provenance '" + s + "'");
}

DomainRestrictedRdm DomainRestrictedRdm::make(std::string label, SymMatrix matrix,
                                              Provenance provenance) {
  Spectrum spectrum = sym_eigen(matrix);
  return DomainRestrictedRdm{std::move(label), std::move(matrix), provenance,
                             std::move(spectrum)};
}

OneRdm validate_one_rdm(const Eigen::MatrixXd& matrix, int n_electrons) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "1-RDM must be a nonempty square matrix");
  }
  if (n_electrons < 1) {
    throw Error(ErrorCode::InvalidArgument, "electron count must be positive");
  }

  std::vector<Violation> violations;
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kSymTol)) {
    violations.push_back({ViolationCode::NonSymmetric, asym,
                          describe(asym, "max |D_ij - D_ji| =")});
  }

  Spectrum spectrum = symmetrized_eigen(matrix);

  const double trace = matrix.trace();
  const double trace_dev = std::abs(trace - n_electrons);
  if (!(trace_dev <= kTraceTol)) {
    violations.push_back({ViolationCode::TraceMismatch, trace_dev,
                          describe(trace, "trace is")});
  }

  for (int i = 0; i < spectrum.eigenvalues.size(); ++i) {
    const double n = spectrum.eigenvalues(i);
    if (n < -kBoundTol) {
      violations.push_back({ViolationCode::BoundViolation, -n,
                            describe(n, "occupation below 0:")});
    } else if (n > 2.0 + kBoundTol) {
      violations.push_back({ViolationCode::BoundViolation, n - 2.0,
                            describe(n, "occupation above 2:")});
    }
  }

  if (!violations.empty()) throw ValidationError(std::move(violations), "1-RDM");

  Eigen::VectorXd roots = spectrum.eigenvalues.unaryExpr(
      [](double x) { return x < kZeroOccupation ? 0.0 : std::sqrt(x); });
  Eigen::MatrixXd r =
      spectrum.eigenvectors * roots.asDiagonal() * spectrum.eigenvectors.transpose();
  r = 0.5 * (r + r.transpose()).eval();

  return OneRdm(SymMatrix(matrix), n_electrons, std::move(spectrum), SymMatrix(std::move(r)));
}

TwoRdm validate_two_rdm(const Tensor4& tensor, const OneRdm& one_rdm) {
  const int m = tensor.dim();
  if (m != one_rdm.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "2-RDM dimension does not match the 1-RDM");
  }
  const int n = one_rdm.n_electrons();

  std::vector<Violation> violations;

  // D2(i,k,j,l) = D2(k,i,l,j) and D2(i,k,j,l) = D2(j,l,i,k)
  double pair_dev = 0.0, herm_dev = 0.0;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
          const double v = tensor(i, k, j, l);
          pair_dev = std::max(pair_dev, std::abs(v - tensor(k, i, l, j)));
          herm_dev = std::max(herm_dev, std::abs(v - tensor(j, l, i, k)));
        }
  if (!(pair_dev <= kTensorSymTol)) {
    violations.push_back({ViolationCode::SymmetryViolation, pair_dev,
                          "D2(i,k,j,l) != D2(k,i,l,j)"});
  }
  if (!(herm_dev <= kTensorSymTol)) {
    violations.push_back({ViolationCode::SymmetryViolation, herm_dev,
                          "D2(i,k,j,l) != D2(j,l,i,k)"});
  }

  double trace = 0.0;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) trace += tensor(i, k, i, k);
  const double expected_trace = 0.5 * n * (n - 1);
  const double trace_dev = std::abs(trace - expected_trace);
  if (!(trace_dev <= kTraceTol)) {
    std::ostringstream os;
    os << "trace is " << trace << ", expected " << expected_trace;
    violations.push_back({ViolationCode::TraceMismatch, trace_dev, os.str()});
  }

  const double factor = 0.5 * (n - 1);
  double contraction_dev = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double sum = 0.0;
      for (int k = 0; k < m; ++k) sum += tensor(i, k, j, k);
      contraction_dev =
          std::max(contraction_dev, std::abs(sum - factor * one_rdm.matrix()(i, j)));
    }
  if (!(contraction_dev <= kTraceTol)) {
    violations.push_back({ViolationCode::ContractionMismatch, contraction_dev,
                          "sum_k D2(i,k,j,k) != (N-1)/2 D_ij"});
  }

  if (!violations.empty()) throw ValidationError(std::move(violations), "2-RDM");
  return TwoRdm(tensor, n);
}

DomainOverlapSet validate_domain_set(const std::vector<Eigen::MatrixXd>& matrices,
                                     std::vector<std::string> labels) {
  if (matrices.empty()) {
    throw Error(ErrorCode::InvalidArgument, "domain set requires at least one domain");
  }
  if (labels.size() != matrices.size()) {
    throw Error(ErrorCode::InvalidArgument, "domain labels and matrices differ in count");
  }
  const Eigen::Index m = matrices.front().rows();
  for (const auto& s : matrices) {
    if (s.rows() != m || s.cols() != m) {
      throw Error(ErrorCode::DimensionMismatch, "domain matrices have inconsistent dimensions");
    }
  }

  std::vector<Violation> violations;
  for (std::size_t d = 0; d < matrices.size(); ++d) {
    const auto& s = matrices[d];
    const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= kSymTol)) {
      violations.push_back({ViolationCode::NonSymmetric, asym,
                            "domain '" + labels[d] + "' is not symmetric"});
      continue;
    }
    Spectrum spec = symmetrized_eigen(s);
    const double lo = spec.eigenvalues.minCoeff();
    const double hi = spec.eigenvalues.maxCoeff();
    if (lo < -kBoundTol) {
      violations.push_back({ViolationCode::BoundViolation, -lo,
                            "domain '" + labels[d] + "' has a negative eigenvalue"});
    }
    if (hi > 1.0 + kBoundTol) {
      violations.push_back({ViolationCode::BoundViolation, hi - 1.0,
                            "domain '" + labels[d] + "' has an eigenvalue above 1"});
    }
  }

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(m, m);
  for (const auto& s : matrices) sum += s;
  const double resolution_dev = (sum - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (!(resolution_dev <= kTraceTol)) {
    violations.push_back({ViolationCode::IdentityResolutionFailure, resolution_dev,
                          "sum of domain overlaps deviates from the identity"});
  }

  if (!violations.empty()) throw ValidationError(std::move(violations), "domain set");

  std::vector<SymMatrix> admitted;
  admitted.reserve(matrices.size());
  for (const auto& s : matrices) admitted.emplace_back(s);
  return DomainOverlapSet(std::move(admitted), std::move(labels));
}

}  // namespace rdmkit
