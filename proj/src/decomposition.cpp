#include "rdmkit/decomposition.hpp"

#include <cmath>
#include <sstream>

namespace rdmkit {

DomainRestrictedRdm symmetric_restrict(const OneRdm& d, const SymMatrix& s,
                                       std::string domain_label) {
  if (s.dim() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "domain overlap dimension does not match the 1-RDM");
  }
  const Eigen::MatrixXd& r = d.sqrt().mat();
  Eigen::MatrixXd g = r * s.mat() * r;
  g = 0.5 * (g + g.transpose()).eval();
  return DomainRestrictedRdm::make(std::move(domain_label), SymMatrix(std::move(g)),
                                   Provenance::SymmetricRestriction);
}

SymMatrix natural_basis_restrict(const Eigen::VectorXd& occupations, const SymMatrix& s_nat) {
  if (occupations.size() != s_nat.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "occupation count does not match the overlap dimension");
  }
  std::vector<Violation> violations;
  for (int i = 0; i < occupations.size(); ++i) {
    const double n = occupations(i);
    if (n < -kBoundTol || n > 2.0 + kBoundTol) {
      std::ostringstream os;
      os << "occupation " << n << " outside [0, 2]";
      violations.push_back({ViolationCode::BoundViolation,
                            n < 0.0 ? -n : n - 2.0, os.str()});
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations), "occupations");

  Eigen::VectorXd roots = occupations.unaryExpr(
      [](double x) { return x < kZeroOccupation ? 0.0 : std::sqrt(x); });
  Eigen::MatrixXd g = roots.asDiagonal() * s_nat.mat() * roots.asDiagonal();
  g = 0.5 * (g + g.transpose()).eval();
  return SymMatrix(std::move(g));
}

std::vector<DomainRestrictedRdm> partition(const OneRdm& d, const DomainOverlapSet& domains) {
  std::vector<DomainRestrictedRdm> parts;
  parts.reserve(domains.size());
  for (int i = 0; i < domains.size(); ++i) {
    parts.push_back(symmetric_restrict(d, domains.matrix(i), domains.label(i)));
  }
  return parts;
}

}  // namespace rdmkit
