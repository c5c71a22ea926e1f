#include "rdmkit/diagnostics.hpp"

namespace rdmkit {

CommutatorReport common_eigenbasis_report(const std::vector<DomainRestrictedRdm>& drs) {
  if (drs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "common_eigenbasis_report requires at least two domain matrices");
  }
  const int dim = drs.front().matrix.dim();
  for (const auto& dr : drs) {
    if (dr.matrix.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "domain matrices have inconsistent dimensions");
    }
  }

  const int n = static_cast<int>(drs.size());
  CommutatorReport report;
  report.labels.reserve(drs.size());
  for (const auto& dr : drs) report.labels.push_back(dr.domain_label);
  report.norms = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double norm = commutator_norm(drs[a].matrix, drs[b].matrix);
      report.norms(a, b) = norm;
      report.norms(b, a) = norm;
      if (norm > report.max_norm) report.max_norm = norm;
    }
  }
  report.commuting = report.max_norm <= kCommutingTol;
  return report;
}

NeglectImpact neglect_impact(const DomainRestrictedRdm& dr) {
  NeglectImpact impact;
  for (int i = 0; i < dr.spectrum.eigenvalues.size(); ++i) {
    const double n = dr.spectrum.eigenvalues(i);
    impact.trace_before += n;
    if (n > 0.0) impact.trace_after_dropping_negatives += n;
  }
  impact.population_leak = impact.trace_before - impact.trace_after_dropping_negatives;
  return impact;
}

}  // namespace rdmkit
