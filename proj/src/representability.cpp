#include "rdmkit/representability.hpp"

#include <cmath>

#include "rdmkit/dafh.hpp"
#include "rdmkit/decomposition.hpp"

namespace rdmkit {

const char* to_string(FindingCode code) {
  switch (code) {
    case FindingCode::NEGATIVE_EIGENVALUE: return "NEGATIVE_EIGENVALUE";
    case FindingCode::PAULI_VIOLATION: return "PAULI_VIOLATION";
    case FindingCode::TRACE_MISMATCH: return "TRACE_MISMATCH";
    case FindingCode::NON_HERMITIAN: return "NON_HERMITIAN";
  }
  return "UNKNOWN";
}

FindingCode finding_code_from_string(const std::string& s) {
  if (s == "NEGATIVE_EIGENVALUE") return FindingCode::NEGATIVE_EIGENVALUE;
  if (s == "PAULI_VIOLATION") return FindingCode::PAULI_VIOLATION;
  if (s == "TRACE_MISMATCH") return FindingCode::TRACE_MISMATCH;
  if (s == "NON_HERMITIAN") return FindingCode::NON_HERMITIAN;
  throw Error(ErrorCode::ParseError, "unknown finding code '" + s + "'");
}

const char* to_string(Verdict v) {
  return v == Verdict::REPRESENTABLE ? "REPRESENTABLE" : "NOT_REPRESENTABLE";
}

RepresentabilityReport check(const Eigen::MatrixXd& m, std::optional<double> expected_trace,
                             double check_tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorCode::DimensionMismatch, "check requires a nonempty square matrix");
  }

  RepresentabilityReport report;
  report.hermiticity_deviation = (m - m.transpose()).cwiseAbs().maxCoeff();
  Spectrum spec = symmetrized_eigen(m);
  report.eigenvalues = spec.eigenvalues;
  report.min_eigenvalue = spec.eigenvalues.minCoeff();
  report.max_eigenvalue = spec.eigenvalues.maxCoeff();
  report.trace = m.trace();
  report.expected_trace = expected_trace;

  if (report.hermiticity_deviation > check_tol) {
    report.findings.push_back({FindingCode::NON_HERMITIAN, report.hermiticity_deviation});
  }
  if (report.min_eigenvalue < -check_tol) {
    report.findings.push_back({FindingCode::NEGATIVE_EIGENVALUE, -report.min_eigenvalue});
  }
  if (report.max_eigenvalue > 2.0 + check_tol) {
    report.findings.push_back({FindingCode::PAULI_VIOLATION, report.max_eigenvalue - 2.0});
  }
  if (expected_trace) {
    const double dev = std::abs(report.trace - *expected_trace);
    if (dev > check_tol) {
      report.findings.push_back({FindingCode::TRACE_MISMATCH, dev});
    }
  }

  report.verdict =
      report.findings.empty() ? Verdict::REPRESENTABLE : Verdict::NOT_REPRESENTABLE;
  return report;
}

std::vector<ConstructionComparison> compare_constructions(const OneRdm& d, const TwoRdm& d2,
                                                          const DomainOverlapSet& domains,
                                                          double check_tol) {
  std::vector<ConstructionComparison> out;
  out.reserve(domains.size());
  for (int i = 0; i < domains.size(); ++i) {
    const SymMatrix& s = domains.matrix(i);
    const double population = (d.matrix().mat() * s.mat()).trace();

    DomainRestrictedRdm sym = symmetric_restrict(d, s, domains.label(i));
    DomainRestrictedRdm hole = dafh_matrix(d, d2, s, domains.label(i));
    RepresentabilityReport sym_report = check(sym.matrix.mat(), population, check_tol);
    RepresentabilityReport hole_report = check(hole.matrix.mat(), population, check_tol);
    const double diff = (sym.matrix.mat() - hole.matrix.mat()).norm();

    out.push_back({domains.label(i), std::move(sym), std::move(hole), std::move(sym_report),
                   std::move(hole_report), diff});
  }
  return out;
}

}  // namespace rdmkit
